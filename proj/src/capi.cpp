#include "qgraph/qgraph.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "qgraph/circulant.hpp"
#include "qgraph/lattice.hpp"
#include "qgraph/star.hpp"

struct qg_circulant {
    qgraph::CirculantUnitary value;
};

struct qg_lattice {
    qgraph::LatticeModel value;
};

struct qg_bandset {
    qgraph::BandSet value;
};

struct qg_fermi {
    qgraph::FermiSurface value;
};

struct qg_dirac_list {
    std::vector<qgraph::DiracPoint> value;
};

namespace {

thread_local std::string last_error;

qg_status to_status(qgraph::ErrorCode code) {
    using qgraph::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return QG_ERR_INVALID_ARGUMENT;
        case ErrorCode::dimension_mismatch: return QG_ERR_DIMENSION;
        case ErrorCode::singular_matrix: return QG_ERR_SINGULAR;
        case ErrorCode::not_unitary: return QG_ERR_NOT_UNITARY;
        case ErrorCode::not_circulant: return QG_ERR_NOT_CIRCULANT;
        case ErrorCode::empty_contour: return QG_ERR_EMPTY_CONTOUR;
        case ErrorCode::numerical_failure: return QG_ERR_NUMERICAL;
    }
    return QG_ERR_INTERNAL;
}

qg_status fail(qg_status s, std::string message) {
    last_error = std::move(message);
    return s;
}

template <typename Fn>
qg_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        return fn();
    } catch (const qgraph::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(QG_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QG_ERR_INTERNAL, "unknown error");
    }
}

#define QG_REQUIRE(cond, msg) \
    if (!(cond)) return fail(QG_ERR_INVALID_ARGUMENT, msg)

qgraph::Complex from_c(qg_complex z) { return {z.re, z.im}; }
qg_complex to_c(qgraph::Complex z) { return {z.real(), z.imag()}; }

qg_status write_matrix(const qgraph::Matrix& m, qg_complex* out, size_t len) {
    const auto e = m.entries();
    if (len < e.size()) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffer needs n*n entries");
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = to_c(e[i]);
    return QG_OK;
}

qgraph::Branch to_branch(qg_branch b) { return b == QG_BRANCH_NEGATIVE ? qgraph::Branch::negative : qgraph::Branch::positive; }

qg_edge_kind to_edge(qgraph::EdgeKind e) {
    switch (e) {
        case qgraph::EdgeKind::center: return QG_EDGE_CENTER;
        case qgraph::EdgeKind::corner: return QG_EDGE_CORNER;
        case qgraph::EdgeKind::range_limit: return QG_EDGE_RANGE;
    }
    return QG_EDGE_RANGE;
}

qg_status emit_circulant(qgraph::CirculantUnitary u, qg_circulant** out) {
    *out = new qg_circulant{std::move(u)};
    return QG_OK;
}

}  // namespace

extern "C" {

const char* qg_version(void) { return "1.0.0"; }

const char* qg_status_string(qg_status status) {
    switch (status) {
        case QG_OK: return "ok";
        case QG_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QG_ERR_DIMENSION: return "dimension mismatch";
        case QG_ERR_SINGULAR: return "singular matrix";
        case QG_ERR_NOT_UNITARY: return "not unitary";
        case QG_ERR_NOT_CIRCULANT: return "not circulant";
        case QG_ERR_EMPTY_CONTOUR: return "empty contour";
        case QG_ERR_NUMERICAL: return "numerical failure";
        case QG_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case QG_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qg_last_error(void) { return last_error.c_str(); }

qg_status qg_circulant_from_first_row(const qg_complex* row, size_t n, qg_circulant** out) {
    QG_REQUIRE(row && out, "null argument");
    return guarded([&] {
        std::vector<qgraph::Complex> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = from_c(row[i]);
        return emit_circulant(qgraph::CirculantUnitary::from_first_row(std::move(r)), out);
    });
}

qg_status qg_circulant_from_eigenphases(const double* phases, size_t n, qg_circulant** out) {
    QG_REQUIRE(phases && out, "null argument");
    return guarded([&] {
        qgraph::EigenPhases p(std::vector<double>(phases, phases + n));
        return emit_circulant(qgraph::CirculantUnitary::from_eigenphases(p), out);
    });
}

qg_status qg_circulant_from_json(const char* json, qg_circulant** out) {
    QG_REQUIRE(json && out, "null argument");
    return guarded([&] { return emit_circulant(qgraph::circulant_from_json(json), out); });
}

qg_status qg_circulant_shift(size_t n, qg_complex factor, qg_circulant** out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] { return emit_circulant(qgraph::shift_coupling(n, from_c(factor)), out); });
}

qg_status qg_circulant_delta(size_t n, double alpha, qg_circulant** out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] { return emit_circulant(qgraph::delta_coupling(n, alpha), out); });
}

qg_status qg_circulant_permutation_invariant(size_t n, qg_complex u, qg_complex v, qg_circulant** out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] { return emit_circulant(qgraph::permutation_invariant(n, from_c(u), from_c(v)), out); });
}

void qg_circulant_free(qg_circulant* u) { delete u; }

size_t qg_circulant_size(const qg_circulant* u) { return u ? u->value.size() : 0; }

qg_status qg_circulant_first_row(const qg_circulant* u, qg_complex* out, size_t len) {
    QG_REQUIRE(u && out, "null argument");
    const auto row = u->value.first_row();
    if (len < row.size()) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffer needs n entries");
    for (size_t i = 0; i < row.size(); ++i) out[i] = to_c(row[i]);
    return QG_OK;
}

qg_status qg_circulant_matrix(const qg_circulant* u, qg_complex* out, size_t len) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] { return write_matrix(u->value.matrix(), out, len); });
}

qg_status qg_circulant_eigenphases(const qg_circulant* u, double* out, size_t len) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] {
        const auto p = qgraph::eigenvalues(u->value);
        if (len < p.size()) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffer needs n entries");
        for (size_t i = 0; i < p.size(); ++i) out[i] = p[i];
        return QG_OK;
    });
}

qg_status qg_circulant_to_json(const qg_circulant* u, char* buf, size_t len, size_t* needed) {
    QG_REQUIRE(u, "null argument");
    return guarded([&] {
        const std::string s = qgraph::to_json(u->value);
        if (needed) *needed = s.size() + 1;
        if (!buf || len < s.size() + 1) return fail(QG_ERR_BUFFER_TOO_SMALL, "JSON buffer too small");
        std::memcpy(buf, s.c_str(), s.size() + 1);
        return QG_OK;
    });
}

qg_status qg_circulant_symmetry(const qg_circulant* u, qg_symmetry* out) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] {
        const auto r = qgraph::symmetry_report(u->value);
        out->time_reversal = r.time_reversal ? 1 : 0;
        out->pt_symmetric = r.pt_symmetric ? 1 : 0;
        out->fixed_edge_count = r.parity_fixed_edges.size();
        out->fixed_edges[0] = out->fixed_edges[1] = 0;
        for (size_t i = 0; i < r.parity_fixed_edges.size() && i < 2; ++i) out->fixed_edges[i] = r.parity_fixed_edges[i];
        return QG_OK;
    });
}

qg_status qg_circulant_dnr(const qg_circulant* u, double tol, qg_dnr* out) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] {
        const auto d = qgraph::dnr_decomposition(u->value, tol);
        *out = {d.dirichlet, d.neumann, d.robin};
        return QG_OK;
    });
}

qg_status qg_eigenvector(size_t n, size_t j, qg_complex* out, size_t len) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] {
        const auto v = qgraph::eigenvector(n, j);
        if (len < v.size()) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffer needs n entries");
        for (size_t i = 0; i < v.size(); ++i) out[i] = to_c(v[i]);
        return QG_OK;
    });
}

qg_status qg_parity_operator(size_t n, double* out, size_t len) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] {
        const auto p = qgraph::parity_operator(n);
        if (len < n * n) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffer needs n*n entries");
        for (size_t i = 0; i < n * n; ++i) out[i] = p.entries()[i].real();
        return QG_OK;
    });
}

qg_status qg_boundary_residual(const qg_circulant* u, double ell, const qg_complex* psi, const qg_complex* dpsi,
                               size_t n, qg_complex* out) {
    QG_REQUIRE(u && psi && dpsi && out, "null argument");
    return guarded([&] {
        qgraph::BoundaryData b;
        for (size_t i = 0; i < n; ++i) {
            b.psi.push_back(from_c(psi[i]));
            b.dpsi.push_back(from_c(dpsi[i]));
        }
        const auto r = qgraph::boundary_residual(qgraph::VertexCoupling(u->value, ell), b);
        for (size_t i = 0; i < r.size(); ++i) out[i] = to_c(r[i]);
        return QG_OK;
    });
}

qg_status qg_s_matrix(const qg_circulant* u, double ell, double k, qg_complex* out, size_t len) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] { return write_matrix(qgraph::s_matrix(qgraph::VertexCoupling(u->value, ell), k).s, out, len); });
}

qg_status qg_s_matrix_dense(const qg_complex* u, size_t n, double ell, double k, qg_complex* out) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] {
        std::vector<qgraph::Complex> e(n * n);
        for (size_t i = 0; i < n * n; ++i) e[i] = from_c(u[i]);
        const qgraph::VertexCoupling c(qgraph::Matrix(n, std::move(e)), ell);
        return write_matrix(qgraph::s_matrix_dense(c, k).s, out, n * n);
    });
}

qg_status qg_s_matrix_limit(const qg_circulant* u, qg_limit end, qg_complex* out, size_t len) {
    QG_REQUIRE(u && out, "null argument");
    return guarded([&] {
        const qgraph::VertexCoupling c(u->value, 1.0);
        return write_matrix(
            qgraph::s_matrix_limit(c, end == QG_LIMIT_INFINITY ? qgraph::Limit::infinity : qgraph::Limit::zero), out,
            len);
    });
}

qg_status qg_s_matrix_shift_closed_form(size_t n, double mu, double ell, double k, qg_complex* out, size_t len) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] { return write_matrix(qgraph::s_matrix_shift_closed_form(n, mu, ell, k).s, out, len); });
}

qg_status qg_bound_states(const qg_circulant* u, double ell, double* kappas, size_t* n_bound, double* antibound,
                          size_t* n_antibound, size_t len) {
    QG_REQUIRE(u && kappas && n_bound && antibound && n_antibound, "null argument");
    return guarded([&] {
        if (len < u->value.size()) return fail(QG_ERR_BUFFER_TOO_SMALL, "output buffers need n entries");
        const auto b = qgraph::bound_states(qgraph::VertexCoupling(u->value, ell));
        *n_bound = b.kappas.size();
        *n_antibound = b.antibound_kappas.size();
        std::copy(b.kappas.begin(), b.kappas.end(), kappas);
        std::copy(b.antibound_kappas.begin(), b.antibound_kappas.end(), antibound);
        return QG_OK;
    });
}

qg_status qg_lattice_create(double mu, double ell, qg_lattice** out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] {
        *out = new qg_lattice{qgraph::LatticeModel(mu, ell)};
        return QG_OK;
    });
}

void qg_lattice_free(qg_lattice* m) { delete m; }

qg_status qg_lattice_secular_determinant(const qg_lattice* m, qg_complex k, double theta1, double theta2,
                                         qg_complex* out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        *out = to_c(qgraph::secular_determinant(m->value, from_c(k), {theta1, theta2}));
        return QG_OK;
    });
}

qg_status qg_lattice_coefficients(const qg_lattice* m, qg_branch branch, double x, double theta1, double theta2,
                                  double* c) {
    QG_REQUIRE(m && c, "null argument");
    return guarded([&] {
        const qgraph::Quasimomentum q{theta1, theta2};
        const auto s = branch == QG_BRANCH_NEGATIVE ? qgraph::coefficients_negative(m->value, x, q)
                                                    : qgraph::coefficients_positive(m->value, x, q);
        for (size_t j = 0; j < 5; ++j) c[j] = s.c[j];
        return QG_OK;
    });
}

qg_status qg_lattice_reduced_fg(const qg_lattice* m, qg_branch branch, double x, double* f, double* g) {
    QG_REQUIRE(m && f && g, "null argument");
    return guarded([&] {
        const auto r = qgraph::reduced_fg(m->value, x, to_branch(branch));
        *f = r.f;
        *g = r.g;
        return QG_OK;
    });
}

qg_status qg_lattice_membership(const qg_lattice* m, qg_branch branch, double x, qg_membership* out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        const auto v = qgraph::membership(m->value, x, to_branch(branch));
        out->status = static_cast<qg_membership_status>(v.status);
        out->has_q_star = v.q_star ? 1 : 0;
        out->q_star = v.q_star.value_or(0.0);
        return QG_OK;
    });
}

qg_status qg_lattice_bands(const qg_lattice* m, qg_branch branch, double lo, double hi, int grid, double tol,
                           qg_bandset** out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        *out = new qg_bandset{qgraph::band_structure(m->value, to_branch(branch), lo, hi, grid, tol)};
        return QG_OK;
    });
}

qg_status qg_lattice_p_sigma(const qg_lattice* m, double k_max, int grid, double* out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        *out = qgraph::p_sigma_estimate(m->value, k_max, grid);
        return QG_OK;
    });
}

qg_status qg_lattice_band_width_bound(const qg_lattice* m, int n, double* out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        *out = qgraph::band_width_bound(m->value, n);
        return QG_OK;
    });
}

qg_status qg_flat_band_mu(double ell, double* out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] {
        *out = qgraph::flat_band_mu(ell);
        return QG_OK;
    });
}

qg_status qg_negative_asymptotic_roots(double mu, double* kappa1, double* kappa2) {
    QG_REQUIRE(kappa1 && kappa2, "null argument");
    return guarded([&] {
        const auto [a, b] = qgraph::negative_asymptotic_roots(mu);
        *kappa1 = a;
        *kappa2 = b;
        return QG_OK;
    });
}

size_t qg_bandset_count(const qg_bandset* b) { return b ? b->value.intervals.size() : 0; }

qg_status qg_bandset_get(const qg_bandset* b, size_t i, qg_band* out) {
    QG_REQUIRE(b && out, "null argument");
    QG_REQUIRE(i < b->value.intervals.size(), "band index out of range");
    const auto& iv = b->value.intervals[i];
    *out = {iv.lo, iv.hi, to_edge(iv.edge_lo), to_edge(iv.edge_hi)};
    return QG_OK;
}

size_t qg_bandset_flat_count(const qg_bandset* b) { return b ? b->value.flat_points.size() : 0; }

qg_status qg_bandset_flat_point(const qg_bandset* b, size_t i, double* out) {
    QG_REQUIRE(b && out, "null argument");
    QG_REQUIRE(i < b->value.flat_points.size(), "flat point index out of range");
    *out = b->value.flat_points[i];
    return QG_OK;
}

void qg_bandset_free(qg_bandset* b) { delete b; }

qg_status qg_lattice_fermi_surface(const qg_lattice* m, double k, int grid, qg_fermi** out) {
    QG_REQUIRE(m && out, "null argument");
    return guarded([&] {
        *out = new qg_fermi{qgraph::fermi_surface(m->value, k, grid)};
        return QG_OK;
    });
}

double qg_fermi_q_star(const qg_fermi* f) { return f ? f->value.q_star : 0.0; }

size_t qg_fermi_point_count(const qg_fermi* f) { return f ? f->value.points.size() : 0; }

qg_status qg_fermi_point(const qg_fermi* f, size_t i, double* theta1, double* theta2) {
    QG_REQUIRE(f && theta1 && theta2, "null argument");
    QG_REQUIRE(i < f->value.points.size(), "point index out of range");
    *theta1 = f->value.points[i].theta1;
    *theta2 = f->value.points[i].theta2;
    return QG_OK;
}

size_t qg_fermi_segment_count(const qg_fermi* f) { return f ? f->value.segments.size() : 0; }

qg_status qg_fermi_segment(const qg_fermi* f, size_t i, size_t* a, size_t* b) {
    QG_REQUIRE(f && a && b, "null argument");
    QG_REQUIRE(i < f->value.segments.size(), "segment index out of range");
    *a = f->value.segments[i].first;
    *b = f->value.segments[i].second;
    return QG_OK;
}

void qg_fermi_free(qg_fermi* f) { delete f; }

qg_status qg_dirac_points(double ell, double mu_lo, double mu_hi, int grid, double k_lo, double k_hi,
                          unsigned threads, qg_dirac_list** out) {
    QG_REQUIRE(out, "null argument");
    return guarded([&] {
        qgraph::DiracSearchOptions opt;
        opt.k_lo = k_lo;
        opt.k_hi = k_hi;
        opt.threads = threads;
        *out = new qg_dirac_list{qgraph::dirac_points(ell, mu_lo, mu_hi, grid, opt)};
        return QG_OK;
    });
}

size_t qg_dirac_count(const qg_dirac_list* d) { return d ? d->value.size() : 0; }

qg_status qg_dirac_get(const qg_dirac_list* d, size_t i, qg_dirac_point* out) {
    QG_REQUIRE(d && out, "null argument");
    QG_REQUIRE(i < d->value.size(), "index out of range");
    const auto& p = d->value[i];
    *out = {p.mu, p.k, to_edge(p.location)};
    return QG_OK;
}

void qg_dirac_free(qg_dirac_list* d) { delete d; }

}  // extern "C"
