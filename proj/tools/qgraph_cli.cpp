// Command-line front end over the qgraph C interface.
//
// Exit codes: 0 success, 2 invalid input (bad flags, parameters rejected by
// the library, unwritable output), 3 numerical failure (empty Fermi contour,
// singular system, failed refinement).

#include <qgraph/qgraph.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace {

using nlohmann::ordered_json;
constexpr double kPi = 3.14159265358979323846;

enum ExitCode { kExitOk = 0, kExitInvalid = 2, kExitNumerical = 3 };

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(qg_status s) {
    switch (s) {
        case QG_ERR_SINGULAR:
        case QG_ERR_EMPTY_CONTOUR:
        case QG_ERR_NUMERICAL:
        case QG_ERR_INTERNAL:
            return kExitNumerical;
        default:
            return kExitInvalid;
    }
}

void check(qg_status s) {
    if (s != QG_OK) throw Failure{exit_code_for(s), std::string(qg_status_string(s)) + ": " + qg_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Circulant = std::unique_ptr<qg_circulant, Deleter<qg_circulant, qg_circulant_free>>;
using Lattice = std::unique_ptr<qg_lattice, Deleter<qg_lattice, qg_lattice_free>>;
using BandSet = std::unique_ptr<qg_bandset, Deleter<qg_bandset, qg_bandset_free>>;
using Fermi = std::unique_ptr<qg_fermi, Deleter<qg_fermi, qg_fermi_free>>;
using DiracList = std::unique_ptr<qg_dirac_list, Deleter<qg_dirac_list, qg_dirac_free>>;

// ---- output tables ------------------------------------------------------

// Values are rounded to 12 significant digits once, so the CSV text and the
// JSON number parse back to the same double.
double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

// monostate is an absent value: empty in CSV, null in JSON.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return {};
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

ordered_json json_cell(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const auto* d = std::get_if<double>(&c)) return round12(*d);
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += '\n';
    }
    return out;
}

// ---- options ------------------------------------------------------------

struct Options {
    // coupling
    std::string coupling = "shift";
    std::size_t n = 3;
    bool negate = false;
    double phase = 0.0;  // shift factor exp(i phase)
    double alpha = 0.0;
    double u_phase = kPi;
    double w_phase = 0.0;
    std::string first_row;
    // graph / lattice
    double mu = 0.0;
    double ell = 1.0;
    double k = 0.0;
    double k_min = 1e-6;
    double k_max = 20.0;
    double mu_min = 0.0;
    double mu_max = 0.5 * kPi;
    int grid = 2000;
    int mu_grid = 200;
    double tol = 1e-12;
    std::string branch = "both";
    std::string limit;
    bool closed_form = false;
    // output
    std::string format = "json";
    std::string output;
    std::string svg;
    unsigned threads = 0;
};

ordered_json coupling_params(const Options& o) {
    ordered_json p;
    p["coupling"] = o.coupling;
    if (o.coupling == "custom") {
        p["first_row"] = o.first_row;
    } else {
        p["n"] = o.n;
        if (o.coupling == "shift") p["phase"] = round12(o.phase);
        if (o.coupling == "delta") p["alpha"] = round12(o.alpha);
        if (o.coupling == "perm-invariant") {
            p["u_phase"] = round12(o.u_phase);
            p["w_phase"] = round12(o.w_phase);
        }
    }
    p["negate"] = o.negate;
    return p;
}

qg_complex polar(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Accepts [[re, im], ...], [x, ...] or a full {"n": .., "first_row": ..} object.
std::string normalize_first_row(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Failure{kExitInvalid, std::string("--first-row is not valid JSON: ") + e.what()};
    }
    if (j.is_object()) return j.dump();
    if (!j.is_array() || j.empty()) throw Failure{kExitInvalid, "--first-row must be a non-empty JSON array"};
    ordered_json row = ordered_json::array();
    for (const auto& e : j) {
        if (e.is_number()) row.push_back({e.get<double>(), 0.0});
        else row.push_back(e);
    }
    return ordered_json{{"n", row.size()}, {"first_row", row}}.dump();
}

Circulant make_coupling(const Options& o) {
    qg_circulant* raw = nullptr;
    const double sign = o.negate ? -1.0 : 1.0;
    if (o.coupling == "shift") {
        const qg_complex f = polar(o.phase);
        check(qg_circulant_shift(o.n, {sign * f.re, sign * f.im}, &raw));
        return Circulant(raw);
    }
    if (o.coupling == "delta") {
        check(qg_circulant_delta(o.n, o.alpha, &raw));
    } else if (o.coupling == "perm-invariant") {
        const qg_complex u = polar(o.u_phase), w = polar(o.w_phase);
        const double n = static_cast<double>(o.n);
        check(qg_circulant_permutation_invariant(o.n, u, {(w.re - u.re) / n, (w.im - u.im) / n}, &raw));
    } else {
        if (o.first_row.empty()) throw Failure{kExitInvalid, "--coupling custom requires --first-row"};
        check(qg_circulant_from_json(normalize_first_row(o.first_row).c_str(), &raw));
    }
    Circulant u(raw);
    if (!o.negate) return u;
    std::vector<qg_complex> row(qg_circulant_size(u.get()));
    check(qg_circulant_first_row(u.get(), row.data(), row.size()));
    for (auto& c : row) c = {-c.re, -c.im};
    check(qg_circulant_from_first_row(row.data(), row.size(), &raw));
    return Circulant(raw);
}

Lattice make_lattice(double mu, double ell) {
    qg_lattice* raw = nullptr;
    check(qg_lattice_create(mu, ell, &raw));
    return Lattice(raw);
}

// ---- commands -----------------------------------------------------------

struct Result {
    ordered_json params;
    Table table;
    ordered_json summary = ordered_json::object();
    std::string svg;
};

Result cmd_symmetry(const Options& o) {
    auto u = make_coupling(o);
    qg_symmetry s{};
    qg_dnr d{};
    check(qg_circulant_symmetry(u.get(), &s));
    check(qg_circulant_dnr(u.get(), 1e-9, &d));
    const std::size_t n = qg_circulant_size(u.get());
    std::vector<double> phases(n);
    check(qg_circulant_eigenphases(u.get(), phases.data(), n));

    Result r;
    r.params = coupling_params(o);
    std::string fixed;
    for (std::size_t i = 0; i < s.fixed_edge_count; ++i) fixed += (i ? ";" : "") + std::to_string(s.fixed_edges[i]);
    r.table.header = {"n", "time_reversal", "pt_symmetric", "parity_fixed_edges", "dirichlet", "neumann", "robin"};
    r.table.rows.push_back({static_cast<long long>(n), s.time_reversal != 0, s.pt_symmetric != 0, fixed,
                            static_cast<long long>(d.dirichlet), static_cast<long long>(d.neumann),
                            static_cast<long long>(d.robin)});
    ordered_json ph = ordered_json::array();
    for (double p : phases) ph.push_back(round12(p));
    r.summary["eigenphases"] = ph;
    return r;
}

Result cmd_smatrix(const Options& o) {
    Result r;
    r.params = coupling_params(o);
    r.params["ell"] = round12(o.ell);

    std::vector<qg_complex> s;
    std::size_t n = 0;
    if (o.closed_form) {
        if (o.coupling != "shift") throw Failure{kExitInvalid, "--closed-form is only available for --coupling shift"};
        n = o.n;
        s.resize(n * n);
        const double mu = o.phase + (o.negate ? kPi : 0.0);
        check(qg_s_matrix_shift_closed_form(n, mu, o.ell, o.k, s.data(), s.size()));
        r.params["k"] = round12(o.k);
        r.params["closed_form"] = true;
    } else {
        auto u = make_coupling(o);
        n = qg_circulant_size(u.get());
        s.resize(n * n);
        if (!o.limit.empty()) {
            check(qg_s_matrix_limit(u.get(), o.limit == "zero" ? QG_LIMIT_ZERO : QG_LIMIT_INFINITY, s.data(), s.size()));
            r.params["limit"] = o.limit;
        } else {
            check(qg_s_matrix(u.get(), o.ell, o.k, s.data(), s.size()));
            r.params["k"] = round12(o.k);
        }
    }

    r.table.header = {"row", "col", "re", "im"};
    ordered_json matrix = ordered_json::array();
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            const qg_complex c = s[i * n + j];
            r.table.rows.push_back({static_cast<long long>(i + 1), static_cast<long long>(j + 1), c.re, c.im});
            row.push_back({round12(c.re), round12(c.im)});
            // (S S^dagger)_ij - delta_ij
            double re = (i == j) ? -1.0 : 0.0, im = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                const qg_complex a = s[i * n + l], b = s[j * n + l];
                re += a.re * b.re + a.im * b.im;
                im += a.im * b.re - a.re * b.im;
            }
            defect = std::max(defect, std::hypot(re, im));
        }
        matrix.push_back(row);
    }
    r.summary["matrix"] = matrix;
    r.summary["unitarity_defect"] = round12(defect);
    return r;
}

Result cmd_bound_states(const Options& o) {
    auto u = make_coupling(o);
    const std::size_t n = qg_circulant_size(u.get());
    std::vector<double> bound(n), anti(n);
    std::size_t nb = 0, na = 0;
    check(qg_bound_states(u.get(), o.ell, bound.data(), &nb, anti.data(), &na, n));

    Result r;
    r.params = coupling_params(o);
    r.params["ell"] = round12(o.ell);
    r.table.header = {"kind", "kappa", "energy"};
    for (std::size_t i = 0; i < nb; ++i) r.table.rows.push_back({std::string("bound"), bound[i], -bound[i] * bound[i]});
    for (std::size_t i = 0; i < na; ++i) r.table.rows.push_back({std::string("antibound"), anti[i], std::monostate{}});
    return r;
}

const char* edge_name(qg_edge_kind e) {
    switch (e) {
        case QG_EDGE_CENTER: return "center";
        case QG_EDGE_CORNER: return "corner";
        default: return "range";
    }
}

struct BandRow {
    qg_branch branch;
    qg_band band;
};

struct BandData {
    std::vector<BandRow> bands;
    std::vector<double> flat;
};

BandData compute_bands(double mu, double ell, double lo, double hi, int grid, double tol, const std::string& which) {
    auto m = make_lattice(mu, ell);
    BandData out;
    for (qg_branch b : {QG_BRANCH_POSITIVE, QG_BRANCH_NEGATIVE}) {
        if (which == "positive" && b != QG_BRANCH_POSITIVE) continue;
        if (which == "negative" && b != QG_BRANCH_NEGATIVE) continue;
        qg_bandset* raw = nullptr;
        check(qg_lattice_bands(m.get(), b, lo, hi, grid, tol, &raw));
        BandSet set(raw);
        for (std::size_t i = 0; i < qg_bandset_count(set.get()); ++i) {
            qg_band band{};
            check(qg_bandset_get(set.get(), i, &band));
            out.bands.push_back({b, band});
        }
        if (b == QG_BRANCH_POSITIVE) {
            for (std::size_t i = 0; i < qg_bandset_flat_count(set.get()); ++i) {
                double k = 0.0;
                check(qg_bandset_flat_point(set.get(), i, &k));
                out.flat.push_back(k);
            }
        }
    }
    return out;
}

void append_band_rows(Table& t, double mu, double ell, const BandData& d) {
    for (const auto& b : d.bands) {
        t.rows.push_back({mu, ell, std::string(b.branch == QG_BRANCH_POSITIVE ? "positive" : "negative"), b.band.lo,
                          b.band.hi, std::string(edge_name(b.band.edge_lo)), std::string(edge_name(b.band.edge_hi))});
    }
    for (double k : d.flat) t.rows.push_back({mu, ell, std::string("flat"), k, k, std::string("flat"), std::string("flat")});
}

const std::vector<std::string> kBandHeader = {"mu", "ell", "branch", "k_lo", "k_hi", "edge_lo", "edge_hi"};

ordered_json lattice_params(const Options& o) {
    return ordered_json{{"mu", round12(o.mu)},       {"ell", round12(o.ell)}, {"k_min", round12(o.k_min)},
                        {"k_max", round12(o.k_max)}, {"grid", o.grid},        {"tol", round12(o.tol)},
                        {"branch", o.branch}};
}

Result cmd_bands(const Options& o) {
    const auto d = compute_bands(o.mu, o.ell, o.k_min, o.k_max, o.grid, o.tol, o.branch);
    Result r;
    r.params = lattice_params(o);
    r.table.header = kBandHeader;
    append_band_rows(r.table, o.mu, o.ell, d);

    double flat_mu = 0.0;
    check(qg_flat_band_mu(o.ell, &flat_mu));
    r.summary["flat_band_mu"] = round12(flat_mu);

    if (!o.svg.empty()) {
        // Negative-branch bands are drawn at -kappa.
        const double x0 = o.branch == "positive" ? 0.0 : -o.k_max;
        qgcli::SvgPlot plot(x0, o.k_max, 0.0, 1.0, "k  (negative branch at -kappa)", "");
        for (const auto& b : d.bands) {
            const bool pos = b.branch == QG_BRANCH_POSITIVE;
            const double a = pos ? b.band.lo : -b.band.hi, c = pos ? b.band.hi : -b.band.lo;
            plot.rect(a, c, 0.1, 0.9, pos ? "#4477aa" : "#cc6677");
        }
        for (double k : d.flat) plot.dot(k, 0.5, "black", 4.0);
        char title[128];
        std::snprintf(title, sizeof title, "bands, mu = %.6g, ell = %.6g", o.mu, o.ell);
        r.svg = plot.str(title);
    }
    return r;
}

Result cmd_fermi(const Options& o) {
    auto m = make_lattice(o.mu, o.ell);
    qg_fermi* raw = nullptr;
    check(qg_lattice_fermi_surface(m.get(), o.k, o.grid, &raw));
    Fermi f(raw);

    Result r;
    r.params = {{"mu", round12(o.mu)}, {"ell", round12(o.ell)}, {"k", round12(o.k)}, {"grid", o.grid}};
    r.table.header = {"theta1", "theta2"};
    const std::size_t np = qg_fermi_point_count(f.get());
    std::vector<std::pair<double, double>> pts(np);
    for (std::size_t i = 0; i < np; ++i) {
        check(qg_fermi_point(f.get(), i, &pts[i].first, &pts[i].second));
        r.table.rows.push_back({pts[i].first, pts[i].second});
    }
    ordered_json segs = ordered_json::array();
    const std::size_t ns = qg_fermi_segment_count(f.get());
    std::vector<std::pair<std::size_t, std::size_t>> seg(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        check(qg_fermi_segment(f.get(), i, &seg[i].first, &seg[i].second));
        segs.push_back({seg[i].first, seg[i].second});
    }
    r.summary["q_star"] = round12(qg_fermi_q_star(f.get()));
    r.summary["segments"] = segs;

    if (!o.svg.empty()) {
        qgcli::SvgPlot plot(-kPi, kPi, -kPi, kPi, "theta1", "theta2");
        for (const auto& [a, b] : seg)
            plot.line(pts[a].first, pts[a].second, pts[b].first, pts[b].second, "#4477aa", 1.5);
        if (ns == 0)
            for (const auto& p : pts) plot.dot(p.first, p.second, "#4477aa");
        char title[128];
        std::snprintf(title, sizeof title, "Fermi contour, mu = %.6g, ell = %.6g, k = %.6g", o.mu, o.ell, o.k);
        r.svg = plot.str(title);
    }
    return r;
}

Result cmd_psigma(const Options& o) {
    auto m = make_lattice(o.mu, o.ell);
    double p = 0.0;
    check(qg_lattice_p_sigma(m.get(), o.k_max, o.grid, &p));
    Result r;
    r.params = {{"mu", round12(o.mu)}, {"ell", round12(o.ell)}, {"k_max", round12(o.k_max)}, {"grid", o.grid}};
    r.table.header = {"mu", "ell", "k_max", "energy_max", "p_sigma"};
    r.table.rows.push_back({o.mu, o.ell, o.k_max, o.k_max * o.k_max, p});
    return r;
}

Result cmd_dirac(const Options& o) {
    qg_dirac_list* raw = nullptr;
    check(qg_dirac_points(o.ell, o.mu_min, o.mu_max, o.mu_grid, o.k_min, o.k_max, o.threads, &raw));
    DiracList d(raw);

    Result r;
    r.params = {{"ell", round12(o.ell)},       {"mu_min", round12(o.mu_min)}, {"mu_max", round12(o.mu_max)},
                {"mu_grid", o.mu_grid},        {"k_min", round12(o.k_min)},   {"k_max", round12(o.k_max)}};
    r.table.header = {"mu", "ell", "k", "location"};
    std::vector<qg_dirac_point> pts(qg_dirac_count(d.get()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        check(qg_dirac_get(d.get(), i, &pts[i]));
        r.table.rows.push_back({pts[i].mu, o.ell, pts[i].k, std::string(edge_name(pts[i].location))});
    }
    if (!o.svg.empty()) {
        qgcli::SvgPlot plot(o.mu_min, o.mu_max, o.k_min, o.k_max, "mu", "k");
        for (const auto& p : pts) plot.dot(p.mu, p.k, p.location == QG_EDGE_CENTER ? "#4477aa" : "#cc6677");
        char title[128];
        std::snprintf(title, sizeof title, "Dirac points, ell = %.6g", o.ell);
        r.svg = plot.str(title);
    }
    return r;
}

Result cmd_spectrum(const Options& o) {
    if (o.mu_grid < 2) throw Failure{kExitInvalid, "--mu-grid must be at least 2"};
    if (!(o.mu_max > o.mu_min)) throw Failure{kExitInvalid, "--mu-max must exceed --mu-min"};

    std::vector<double> mus(static_cast<std::size_t>(o.mu_grid));
    for (std::size_t i = 0; i < mus.size(); ++i)
        mus[i] = o.mu_min + (o.mu_max - o.mu_min) * static_cast<double>(i) / static_cast<double>(mus.size() - 1);

    // Each worker fills its own slots; rows are assembled in grid order.
    std::vector<BandData> data(mus.size());
    std::vector<Failure> errors(mus.size(), Failure{kExitOk, {}});
    unsigned workers = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(mus.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < mus.size(); i += workers) {
                try {
                    data[i] = compute_bands(mus[i], o.ell, o.k_min, o.k_max, o.grid, o.tol, "both");
                } catch (const Failure& f) {
                    errors[i] = f;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e.code != kExitOk) throw e;

    Result r;
    r.params = {{"ell", round12(o.ell)},     {"mu_min", round12(o.mu_min)}, {"mu_max", round12(o.mu_max)},
                {"mu_grid", o.mu_grid},      {"k_min", round12(o.k_min)},   {"k_max", round12(o.k_max)},
                {"grid", o.grid},            {"tol", round12(o.tol)}};
    r.table.header = kBandHeader;
    for (std::size_t i = 0; i < mus.size(); ++i) append_band_rows(r.table, mus[i], o.ell, data[i]);

    double flat_mu = 0.0;
    check(qg_flat_band_mu(o.ell, &flat_mu));
    r.summary["flat_band_mu"] = round12(flat_mu);

    if (!o.svg.empty()) {
        qgcli::SvgPlot plot(o.mu_min, o.mu_max, -o.k_max, o.k_max, "mu", "k  (negative branch at -kappa)");
        const double half = 0.5 * (o.mu_max - o.mu_min) / static_cast<double>(mus.size() - 1);
        for (std::size_t i = 0; i < mus.size(); ++i) {
            for (const auto& b : data[i].bands) {
                const bool pos = b.branch == QG_BRANCH_POSITIVE;
                const double lo = pos ? b.band.lo : -b.band.hi, hi = pos ? b.band.hi : -b.band.lo;
                plot.rect(mus[i] - half, mus[i] + half, lo, hi, pos ? "#4477aa" : "#cc6677");
            }
        }
        if (flat_mu >= o.mu_min && flat_mu <= o.mu_max && 1.0 <= o.k_max) plot.dot(flat_mu, 1.0, "black", 4.0);
        char title[128];
        std::snprintf(title, sizeof title, "spectrum vs mu, ell = %.6g", o.ell);
        r.svg = plot.str(title);
    }
    return r;
}

// ---- emission -----------------------------------------------------------

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{kExitInvalid, "cannot open output path: " + path};
    f << text;
    f.flush();
    if (!f) throw Failure{kExitInvalid, "failed writing output path: " + path};
}

void emit(const std::string& command, const Options& o, const Result& r) {
    std::string text;
    if (o.format == "csv") {
        text = to_csv(r.table);
    } else {
        ordered_json doc;
        doc["command"] = command;
        doc["params"] = r.params;
        ordered_json results = ordered_json::array();
        for (const auto& row : r.table.rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < row.size(); ++i) obj[r.table.header[i]] = json_cell(row[i]);
            results.push_back(obj);
        }
        doc["results"] = results;
        for (const auto& [key, value] : r.summary.items()) doc[key] = value;
        doc["version"] = qg_version();
        text = doc.dump(2) + "\n";
    }
    // Everything is computed before the first byte is written.
    if (!o.svg.empty()) write_file(o.svg, r.svg);
    if (o.output.empty()) std::cout << text << std::flush;
    else write_file(o.output, text);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Quantum graphs with circulant vertex couplings: star-graph scattering and square-lattice spectra"};
    app.set_version_flag("--version", std::string(qg_version()));
    app.require_subcommand(1, 1);

    auto add_output = [&](CLI::App* c, bool with_svg) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        c->add_option("--output", o.output, "Write the table here instead of stdout");
        if (with_svg) c->add_option("--svg", o.svg, "Also write an SVG plot to this path");
    };
    auto add_coupling = [&](CLI::App* c) {
        c->add_option("--coupling", o.coupling, "Vertex coupling family")
            ->check(CLI::IsMember({"shift", "delta", "perm-invariant", "custom"}))
            ->capture_default_str();
        c->add_option("--n", o.n, "Number of edges")->check(CLI::PositiveNumber)->capture_default_str();
        c->add_flag("--negate", o.negate, "Multiply the coupling by -1");
        c->add_option("--phase", o.phase, "shift: coupling is exp(i phase) R")->capture_default_str();
        c->add_option("--alpha", o.alpha, "delta: coupling strength")->capture_default_str();
        c->add_option("--u-phase", o.u_phase, "perm-invariant: u = exp(i u_phase)")->capture_default_str();
        c->add_option("--w-phase", o.w_phase, "perm-invariant: u + n v = exp(i w_phase)")->capture_default_str();
        c->add_option("--first-row", o.first_row, "custom: JSON first row, [[re, im], ...] or [x, ...]");
    };
    auto positive = CLI::PositiveNumber;

    auto* symmetry = app.add_subcommand("symmetry", "Time-reversal, PT and Dirichlet/Neumann/Robin structure of a coupling");
    add_coupling(symmetry);
    add_output(symmetry, false);

    auto* smatrix = app.add_subcommand("smatrix", "On-shell scattering matrix of the star graph");
    add_coupling(smatrix);
    smatrix->add_option("--ell", o.ell, "Edge length")->check(positive)->capture_default_str();
    auto* k_opt = smatrix->add_option("--k", o.k, "Momentum")->check(positive);
    auto* lim_opt = smatrix->add_option("--limit", o.limit, "Limit instead of a momentum")
                        ->check(CLI::IsMember({"zero", "infinity"}));
    k_opt->excludes(lim_opt);
    smatrix->add_flag("--closed-form", o.closed_form, "Use the closed form for the shift coupling");
    add_output(smatrix, false);

    auto* bound = app.add_subcommand("bound-states", "Bound and antibound states of the star graph");
    add_coupling(bound);
    bound->add_option("--ell", o.ell, "Edge length")->check(positive)->capture_default_str();
    add_output(bound, false);

    auto add_lattice = [&](CLI::App* c) {
        c->add_option("--mu", o.mu, "Lattice coupling phase, eps = exp(i mu)")
            ->check(CLI::Range(0.0, 0.5 * kPi))
            ->capture_default_str();
        c->add_option("--ell", o.ell, "Lattice spacing")->check(positive)->capture_default_str();
    };

    auto* bands = app.add_subcommand("bands", "Band intervals of the square lattice");
    add_lattice(bands);
    bands->add_option("--k-min", o.k_min, "Lower end of the momentum window")->check(positive)->capture_default_str();
    bands->add_option("--k-max", o.k_max, "Upper end of the momentum window")->check(positive)->capture_default_str();
    bands->add_option("--grid", o.grid, "Seed grid size")->check(positive)->capture_default_str();
    bands->add_option("--tol", o.tol, "Edge tolerance")->check(positive)->capture_default_str();
    bands->add_option("--branch", o.branch, "Which spectral branch")
        ->check(CLI::IsMember({"positive", "negative", "both"}))
        ->capture_default_str();
    add_output(bands, true);

    auto* fermi = app.add_subcommand("fermi", "Fermi contour at momentum k");
    add_lattice(fermi);
    fermi->add_option("--k", o.k, "Momentum")->required()->check(positive);
    fermi->add_option("--grid", o.grid, "Brillouin-zone mesh size")->check(positive)->capture_default_str();
    add_output(fermi, true);

    auto* psigma = app.add_subcommand("psigma", "Spectral fraction of [0, k_max^2]");
    add_lattice(psigma);
    psigma->add_option("--k-max", o.k_max, "Momentum cutoff")->check(positive)->capture_default_str();
    psigma->add_option("--grid", o.grid, "Seed grid size")->check(positive)->capture_default_str();
    add_output(psigma, false);

    auto* dirac = app.add_subcommand("dirac", "Gap closings (Dirac points) over a mu range");
    dirac->add_option("--ell", o.ell, "Lattice spacing")->check(positive)->capture_default_str();
    dirac->add_option("--mu-min", o.mu_min, "Lower end of the mu range")->capture_default_str();
    dirac->add_option("--mu-max", o.mu_max, "Upper end of the mu range")->capture_default_str();
    dirac->add_option("--mu-grid", o.mu_grid, "Number of mu samples")->check(positive)->capture_default_str();
    dirac->add_option("--k-min", o.k_min, "Lower end of the momentum window")->check(positive)->capture_default_str();
    dirac->add_option("--k-max", o.k_max, "Upper end of the momentum window")->check(positive)->capture_default_str();
    dirac->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
    add_output(dirac, true);

    auto* spectrum = app.add_subcommand("spectrum", "Band intervals on a grid of mu values");
    spectrum->add_option("--ell", o.ell, "Lattice spacing")->check(positive)->capture_default_str();
    spectrum->add_option("--mu-min", o.mu_min, "Lower end of the mu range")
        ->check(CLI::Range(0.0, 0.5 * kPi))
        ->capture_default_str();
    spectrum->add_option("--mu-max", o.mu_max, "Upper end of the mu range")
        ->check(CLI::Range(0.0, 0.5 * kPi))
        ->capture_default_str();
    spectrum->add_option("--mu-grid", o.mu_grid, "Number of mu samples")->check(positive)->capture_default_str();
    spectrum->add_option("--k-min", o.k_min, "Lower end of the momentum window")->check(positive)->capture_default_str();
    spectrum->add_option("--k-max", o.k_max, "Upper end of the momentum window")->check(positive)->capture_default_str();
    spectrum->add_option("--grid", o.grid, "Seed grid size per band scan")->check(positive)->capture_default_str();
    spectrum->add_option("--tol", o.tol, "Edge tolerance")->check(positive)->capture_default_str();
    spectrum->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
    add_output(spectrum, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    // Dirac defaults differ from the generic ones: a window strictly inside
    // (0, pi/2) and momenta from 0.1.
    if (dirac->parsed()) {
        if (dirac->count("--mu-min") == 0) o.mu_min = 0.01;
        if (dirac->count("--mu-max") == 0) o.mu_max = 0.5 * kPi - 0.01;
        if (dirac->count("--k-min") == 0) o.k_min = 0.1;
        if (dirac->count("--ell") == 0) o.ell = 10.0;
    }
    if (spectrum->parsed() && spectrum->count("--ell") == 0) o.ell = 1.5;

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "smatrix" && !o.closed_form && o.limit.empty() && smatrix->count("--k") == 0)
            throw Failure{kExitInvalid, "smatrix needs --k or --limit"};
        Result r;
        if (name == "symmetry") r = cmd_symmetry(o);
        else if (name == "smatrix") r = cmd_smatrix(o);
        else if (name == "bound-states") r = cmd_bound_states(o);
        else if (name == "bands") r = cmd_bands(o);
        else if (name == "fermi") r = cmd_fermi(o);
        else if (name == "psigma") r = cmd_psigma(o);
        else if (name == "dirac") r = cmd_dirac(o);
        else r = cmd_spectrum(o);
        emit(name, o, r);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
