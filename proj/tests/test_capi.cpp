#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "qgraph/qgraph.h"

namespace {

constexpr double pi = 3.14159265358979323846;

double cabs(qg_complex z) { return std::hypot(z.re, z.im); }

}  // namespace

TEST_CASE("version and status strings") {
    CHECK(std::string(qg_version()) == "1.0.0");
    CHECK(std::string(qg_status_string(QG_OK)) == "ok");
    CHECK(std::string(qg_status_string(QG_ERR_EMPTY_CONTOUR)) == "empty contour");
}

TEST_CASE("circulant handles") {
    qg_circulant* u = nullptr;
    const qg_complex row[3] = {{0, 0}, {1, 0}, {0, 0}};
    REQUIRE(qg_circulant_from_first_row(row, 3, &u) == QG_OK);
    CHECK(qg_circulant_size(u) == 3);

    std::vector<qg_complex> m(9);
    REQUIRE(qg_circulant_matrix(u, m.data(), m.size()) == QG_OK);
    CHECK(m[1].re == 1.0);
    CHECK(m[5].re == 1.0);
    CHECK(m[6].re == 1.0);
    CHECK(qg_circulant_matrix(u, m.data(), 4) == QG_ERR_BUFFER_TOO_SMALL);

    qg_symmetry sym{};
    REQUIRE(qg_circulant_symmetry(u, &sym) == QG_OK);
    CHECK(sym.time_reversal == 0);
    CHECK(sym.pt_symmetric == 1);
    CHECK(sym.fixed_edge_count == 1);
    CHECK(sym.fixed_edges[0] == 1);

    double phases[3];
    REQUIRE(qg_circulant_eigenphases(u, phases, 3) == QG_OK);
    CHECK(phases[0] == doctest::Approx(0.0));
    CHECK(phases[1] == doctest::Approx(2 * pi / 3));

    size_t needed = 0;
    CHECK(qg_circulant_to_json(u, nullptr, 0, &needed) == QG_ERR_BUFFER_TOO_SMALL);
    std::string json(needed, '\0');
    REQUIRE(qg_circulant_to_json(u, json.data(), json.size(), &needed) == QG_OK);
    qg_circulant* back = nullptr;
    REQUIRE(qg_circulant_from_json(json.c_str(), &back) == QG_OK);
    CHECK(qg_circulant_size(back) == 3);
    qg_circulant_free(back);

    qg_circulant_free(u);
    qg_circulant_free(nullptr);
}

TEST_CASE("constructors report errors") {
    qg_circulant* u = nullptr;
    const qg_complex bad[3] = {{1, 0}, {1, 0}, {0, 0}};
    CHECK(qg_circulant_from_first_row(bad, 3, &u) == QG_ERR_NOT_UNITARY);
    CHECK(u == nullptr);
    CHECK(std::strlen(qg_last_error()) > 0);
    CHECK(qg_circulant_from_first_row(nullptr, 3, &u) == QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_circulant_from_json("{", &u) == QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_circulant_permutation_invariant(3, {1, 0}, {1, 0}, &u) != QG_OK);
    CHECK(qg_lattice_create(2.0, 1.0, nullptr) == QG_ERR_INVALID_ARGUMENT);
    qg_lattice* l = nullptr;
    CHECK(qg_lattice_create(2.0, 1.0, &l) == QG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("eigenphase and named constructors") {
    qg_circulant* u = nullptr;
    const double ph[4] = {pi, pi, pi, pi};
    REQUIRE(qg_circulant_from_eigenphases(ph, 4, &u) == QG_OK);
    qg_dnr d{};
    REQUIRE(qg_circulant_dnr(u, 1e-9, &d) == QG_OK);
    CHECK(d.dirichlet == 4);
    CHECK(qg_circulant_dnr(u, 0.5, &d) == QG_ERR_INVALID_ARGUMENT);
    qg_circulant_free(u);

    REQUIRE(qg_circulant_delta(4, 1.0, &u) == QG_OK);
    qg_symmetry sym{};
    REQUIRE(qg_circulant_symmetry(u, &sym) == QG_OK);
    CHECK(sym.time_reversal == 1);
    CHECK(sym.fixed_edge_count == 2);
    CHECK(sym.fixed_edges[1] == 3);
    qg_circulant_free(u);

    REQUIRE(qg_circulant_permutation_invariant(3, {-1, 0}, {2.0 / 3.0, 0}, &u) == QG_OK);
    qg_complex row[3];
    REQUIRE(qg_circulant_first_row(u, row, 3) == QG_OK);
    CHECK(row[0].re == doctest::Approx(-1.0 / 3.0));
    qg_circulant_free(u);

    qg_complex v[4];
    REQUIRE(qg_eigenvector(4, 1, v, 4) == QG_OK);
    CHECK(v[1].im == doctest::Approx(0.5));
    CHECK(qg_eigenvector(4, 5, v, 4) == QG_ERR_INVALID_ARGUMENT);
    double p[9];
    REQUIRE(qg_parity_operator(3, p, 9) == QG_OK);
    CHECK(p[0] == 1.0);
    CHECK(p[5] == 1.0);
}

TEST_CASE("scattering through the C interface") {
    qg_circulant* u = nullptr;
    REQUIRE(qg_circulant_shift(3, {-1, 0}, &u) == QG_OK);
    std::vector<qg_complex> s(9);
    REQUIRE(qg_s_matrix(u, 1.0, 1e6, s.data(), s.size()) == QG_OK);
    const double expect[9] = {1, -2, -2, -2, 1, -2, -2, -2, 1};
    for (int i = 0; i < 9; ++i) CHECK(std::abs(s[i].re - expect[i] / 3.0) < 1e-5);

    std::vector<qg_complex> lim(9);
    REQUIRE(qg_s_matrix_limit(u, QG_LIMIT_INFINITY, lim.data(), lim.size()) == QG_OK);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(lim[i].re - expect[i] / 3.0) < 1e-14);

    std::vector<qg_complex> um(9), dense(9);
    REQUIRE(qg_circulant_matrix(u, um.data(), 9) == QG_OK);
    REQUIRE(qg_s_matrix_dense(um.data(), 3, 1.0, 2.5, dense.data()) == QG_OK);
    REQUIRE(qg_s_matrix(u, 1.0, 2.5, s.data(), 9) == QG_OK);
    for (int i = 0; i < 9; ++i) CHECK(cabs({dense[i].re - s[i].re, dense[i].im - s[i].im}) < 1e-12);

    std::vector<qg_complex> cf(16);
    REQUIRE(qg_s_matrix_shift_closed_form(4, 0.3, 1.0, 1.0, cf.data(), cf.size()) == QG_OK);
    CHECK(cabs(cf[1]) == doctest::Approx(1.0));

    // Plane wave on edge 1 with S column 1 satisfies the vertex condition.
    qg_complex psi[3], dpsi[3], res[3];
    const double k = 2.5;
    for (int m = 0; m < 3; ++m) {
        const qg_complex sm = s[m * 3 + 0];
        const double in = m == 0 ? 1.0 : 0.0;
        psi[m] = {in + sm.re, sm.im};
        dpsi[m] = {-k * sm.im, k * (sm.re - in)};
    }
    REQUIRE(qg_boundary_residual(u, 1.0, psi, dpsi, 3, res) == QG_OK);
    for (const auto& r : res) CHECK(cabs(r) < 1e-9);
    qg_circulant_free(u);

    REQUIRE(qg_circulant_shift(3, {1, 0}, &u) == QG_OK);
    double kap[3], anti[3];
    size_t nb = 0, na = 0;
    REQUIRE(qg_bound_states(u, 1.0, kap, &nb, anti, &na, 3) == QG_OK);
    REQUIRE(nb == 1);
    CHECK(kap[0] == doctest::Approx(std::sqrt(3.0)));
    CHECK(na == 1);
    CHECK(qg_bound_states(u, 1.0, kap, &nb, anti, &na, 2) == QG_ERR_BUFFER_TOO_SMALL);
    qg_circulant_free(u);
}

TEST_CASE("lattice through the C interface") {
    qg_lattice* m = nullptr;
    REQUIRE(qg_lattice_create(0.5, 10.0, &m) == QG_OK);
    qg_bandset* b = nullptr;
    REQUIRE(qg_lattice_bands(m, QG_BRANCH_NEGATIVE, 1e-6, 5.0, 1000, 1e-12, &b) == QG_OK);
    REQUIRE(qg_bandset_count(b) == 2);
    qg_band band{};
    REQUIRE(qg_bandset_get(b, 0, &band) == QG_OK);
    CHECK(band.lo == doctest::Approx(0.187352124639));
    CHECK(qg_bandset_get(b, 7, &band) == QG_ERR_INVALID_ARGUMENT);
    qg_bandset_free(b);

    double r1 = 0, r2 = 0;
    REQUIRE(qg_negative_asymptotic_roots(0.5, &r1, &r2) == QG_OK);
    CHECK(r2 == doctest::Approx(std::tan(0.25 + pi / 4)));

    double bound = 0;
    REQUIRE(qg_lattice_band_width_bound(m, 3, &bound) == QG_OK);
    CHECK(bound == doctest::Approx(0.8 / std::tan(0.5)));

    qg_complex det{};
    REQUIRE(qg_lattice_secular_determinant(m, {2.0, 0.0}, 0.3, 0.4, &det) == QG_OK);
    double c[5];
    REQUIRE(qg_lattice_coefficients(m, QG_BRANCH_POSITIVE, 2.0, 0.3, 0.4, c) == QG_OK);
    CHECK(c[0] == c[4]);
    double f = 0, g = 0;
    REQUIRE(qg_lattice_reduced_fg(m, QG_BRANCH_POSITIVE, 1.0, &f, &g) == QG_OK);
    CHECK(g == 0.0);
    qg_lattice_free(m);

    double mu = 0;
    REQUIRE(qg_flat_band_mu(1.5, &mu) == QG_OK);
    CHECK(mu == doctest::Approx((pi - 3.0) / 2.0));
    REQUIRE(qg_lattice_create(mu, 1.5, &m) == QG_OK);
    qg_membership v{};
    REQUIRE(qg_lattice_membership(m, QG_BRANCH_POSITIVE, 1.0, &v) == QG_OK);
    CHECK(v.status == QG_FLAT_BAND);
    CHECK(v.has_q_star == 0);
    REQUIRE(qg_lattice_bands(m, QG_BRANCH_POSITIVE, 0.01, 5.0, 500, 1e-12, &b) == QG_OK);
    REQUIRE(qg_bandset_flat_count(b) == 1);
    double fp = 0;
    REQUIRE(qg_bandset_flat_point(b, 0, &fp) == QG_OK);
    CHECK(fp == 1.0);
    qg_bandset_free(b);
    qg_lattice_free(m);

    REQUIRE(qg_lattice_create(0.25, 1.5, &m) == QG_OK);
    qg_fermi* fs = nullptr;
    REQUIRE(qg_lattice_fermi_surface(m, 0.6, 48, &fs) == QG_OK);
    CHECK(qg_fermi_point_count(fs) > 8);
    double t1 = 0, t2 = 0;
    REQUIRE(qg_fermi_point(fs, 0, &t1, &t2) == QG_OK);
    CHECK(std::abs(std::cos(t1) + std::cos(t2) - qg_fermi_q_star(fs)) < 1e-8);
    size_t a = 0, e = 0;
    REQUIRE(qg_fermi_segment(fs, 0, &a, &e) == QG_OK);
    CHECK(a < qg_fermi_point_count(fs));
    qg_fermi_free(fs);
    fs = nullptr;
    CHECK(qg_lattice_fermi_surface(m, 1.2, 48, &fs) == QG_ERR_EMPTY_CONTOUR);
    CHECK(fs == nullptr);

    double ps = 0;
    REQUIRE(qg_lattice_p_sigma(m, 5.0, 1000, &ps) == QG_OK);
    CHECK(ps > 0.0);
    CHECK(ps < 1.0);
    qg_lattice_free(m);
}

TEST_CASE("Dirac points through the C interface") {
    qg_dirac_list* d = nullptr;
    REQUIRE(qg_dirac_points(10.0, 1.54, 1.56, 40, 9.9, 10.5, 0, &d) == QG_OK);
    REQUIRE(qg_dirac_count(d) == 2);
    qg_dirac_point p{};
    REQUIRE(qg_dirac_get(d, 0, &p) == QG_OK);
    CHECK(p.mu == doctest::Approx(1.55068665).epsilon(1e-6));
    CHECK(p.location == QG_EDGE_CENTER);
    REQUIRE(qg_dirac_get(d, 1, &p) == QG_OK);
    CHECK(p.location == QG_EDGE_CORNER);
    qg_dirac_free(d);
    CHECK(qg_dirac_points(10.0, 0.0, 1.0, 40, 9.9, 10.5, 0, &d) == QG_ERR_INVALID_ARGUMENT);
}
