#include "qgraph/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"

namespace qgraph {

namespace {

constexpr double kFlatTolerance = 1e-9;

template <typename T>
struct FG {
    T f;
    T g;
};

// Unscaled positive-branch split of the quartic.
template <typename T>
FG<T> fg_positive(double mu, double ell, T k) {
    const double s2 = std::sin(2.0 * mu);
    const double c2 = std::cos(2.0 * mu);
    const T s = std::sin(k * ell);
    const T c = std::cos(k * ell);
    const T k2 = k * k;
    const T k3 = k2 * k;
    const T k4 = k2 * k2;
    const T f = s2 * ((1.0 + 3.0 * std::cos(2.0 * k * ell)) * k2 - s * s * (1.0 + k4)) + 4.0 * c2 * c * s * (k + k3);
    const T g = 2.0 * s * (k3 - k);
    return {f, g};
}

// Negative branch divided by cosh^2(kappa ell); finite for any kappa > 0.
template <typename T>
FG<T> fg_negative_scaled(double mu, double ell, T kappa) {
    const double s2 = std::sin(2.0 * mu);
    const double c2 = std::cos(2.0 * mu);
    const T e = std::exp(-kappa * ell);
    const T e2 = e * e;
    const T t = (1.0 - e2) / (1.0 + e2);
    const T sech = 2.0 * e / (1.0 + e2);
    const T k2 = kappa * kappa;
    const T k3 = k2 * kappa;
    const T k4 = k2 * k2;
    const T f = s2 * (t * t * (1.0 + k4) - (6.0 - 2.0 * sech * sech) * k2) + 4.0 * c2 * t * (k3 - kappa);
    const T g = 2.0 * t * sech * (k3 + kappa);
    return {f, g};
}

template <typename T>
FG<T> fg_scaled(const LatticeModel& m, T x, Branch branch) {
    return branch == Branch::positive ? fg_positive(m.mu(), m.ell(), x) : fg_negative_scaled(m.mu(), m.ell(), x);
}

double q_from(const FG<double>& v) {
    if (v.g == 0.0) return v.f == 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
    return -v.f / v.g;
}

// dq*/dx by complex step.
double q_star_derivative(const LatticeModel& m, double x) {
    constexpr double h = 1e-20;
    const auto v = fg_positive(m.mu(), m.ell(), Complex(x, h));
    return std::imag(-v.f / v.g) / h;
}

double seed_spacing(const LatticeModel& m) { return std::min(kPi / (4.0 * m.ell()), 0.01); }

void check_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::invalid_argument, std::string(what) + " must be positive");
}

}  // namespace

LatticeModel::LatticeModel(double mu, double ell) : mu_(mu), ell_(ell) {
    if (!(mu >= 0.0 && mu <= 0.5 * kPi)) throw Error(ErrorCode::invalid_argument, "mu must lie in [0, pi/2]");
    if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(ErrorCode::invalid_argument, "ell must be positive");
}

double Quasimomentum::q() const { return std::cos(theta1) + std::cos(theta2); }

double SpectralCoefficients::evaluate(double x) const {
    double acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
}

Complex secular_determinant(const LatticeModel& m, Complex k, const Quasimomentum& q) {
    if (std::abs(k + 1.0) < 1e-14) throw Error(ErrorCode::invalid_argument, "secular determinant has a pole at k = -1");
    const Complex i(0.0, 1.0);
    const Complex eps = m.epsilon();
    const Complex eta = (1.0 - k) / (1.0 + k);
    // Arms of the cross-shaped cell have length ell/2, so xi^2 = exp(i k ell).
    const Complex xi2 = std::exp(i * k * m.ell());
    const Complex xib2 = std::exp(-i * k * m.ell());
    const Complex w1 = std::polar(1.0, q.theta1);
    const Complex w2 = std::polar(1.0, q.theta2);

    Matrix d(4, {
                    -1.0, -eta, eps * eta, eps,
                    eps * w1 * xi2, eps * w1 * xib2 * eta, -1.0, -eta,
                    -w1 * xi2 * eta, -w1 * xib2, eps * w2 * xi2, eps * w2 * xib2 * eta,
                    eps * eta, eps, -w2 * xi2 * eta, -w2 * xib2,
                });
    return determinant(d);
}

Complex secular_prefactor(const LatticeModel& m, Complex k, const Quasimomentum& q) {
    const Complex eps = m.epsilon();
    const Complex kp1 = k + 1.0;
    return 8.0 * Complex(0.0, 1.0) * eps * eps * std::polar(1.0, q.theta1 + q.theta2) / (kp1 * kp1 * kp1 * kp1);
}

SpectralCoefficients coefficients_positive(const LatticeModel& m, double k, const Quasimomentum& q) {
    check_positive(k, "k");
    const double s2 = std::sin(2.0 * m.mu());
    const double c2 = std::cos(2.0 * m.mu());
    const double kl = k * m.ell();
    const double sk = std::sin(kl);
    const double ck = std::cos(kl);
    const double qq = std::cos(q.theta1) + std::cos(q.theta2);
    SpectralCoefficients out{Branch::positive, {}};
    out.c[0] = -s2 * sk * sk;
    out.c[4] = out.c[0];
    out.c[2] = s2 * (1.0 + 3.0 * std::cos(2.0 * kl));
    out.c[1] = 2.0 * (2.0 * c2 * ck - qq) * sk;
    out.c[3] = 2.0 * (2.0 * c2 * ck + qq) * sk;
    return out;
}

SpectralCoefficients coefficients_negative(const LatticeModel& m, double kappa, const Quasimomentum& q) {
    check_positive(kappa, "kappa");
    const double s2 = std::sin(2.0 * m.mu());
    const double c2 = std::cos(2.0 * m.mu());
    const double kl = kappa * m.ell();
    const double sh = std::sinh(kl);
    const double ch = std::cosh(kl);
    const double qq = std::cos(q.theta1) + std::cos(q.theta2);
    SpectralCoefficients out{Branch::negative, {}};
    out.c[0] = s2 * sh * sh;
    out.c[4] = out.c[0];
    out.c[2] = -s2 * (1.0 + 3.0 * std::cosh(2.0 * kl));
    out.c[1] = -2.0 * (2.0 * c2 * ch - qq) * sh;
    out.c[3] = 2.0 * (2.0 * c2 * ch + qq) * sh;
    return out;
}

ReducedFG reduced_fg(const LatticeModel& m, double x, Branch branch) {
    check_positive(x, "spectral argument");
    if (branch == Branch::positive) {
        const auto v = fg_positive(m.mu(), m.ell(), x);
        return {v.f, v.g};
    }
    const double s2 = std::sin(2.0 * m.mu());
    const double c2 = std::cos(2.0 * m.mu());
    const double kl = x * m.ell();
    const double sh = std::sinh(kl);
    const double ch = std::cosh(kl);
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double f = s2 * (sh * sh * (1.0 + x2 * x2) - (1.0 + 3.0 * std::cosh(2.0 * kl)) * x2) + 4.0 * c2 * ch * sh * (x3 - x);
    const double g = 2.0 * sh * (x3 + x);
    return {f, g};
}

double q_star(const LatticeModel& m, double x, Branch branch) {
    check_positive(x, "spectral argument");
    return q_from(fg_scaled(m, x, branch));
}

MembershipVerdict membership(const LatticeModel& m, double x, Branch branch) {
    check_positive(x, "spectral argument");
    const auto v = fg_scaled(m, x, branch);
    if (branch == Branch::negative) {
        // G > 0 for every kappa > 0: no poles and no flat bands on this branch.
        const double q = q_from(v);
        return {std::abs(q) <= 2.0 ? MembershipStatus::in_band : MembershipStatus::gap, q};
    }

    const double h = seed_spacing(m);
    const auto below = fg_scaled(m, std::max(x - h, 0.5 * x), branch);
    const auto above = fg_scaled(m, x + h, branch);
    const double f_scale = std::max(std::abs(below.f), std::abs(above.f));
    const double g_scale = std::max(std::abs(below.g), std::abs(above.g));
    const bool f_small = std::abs(v.f) < kFlatTolerance * (1.0 + f_scale);
    const bool g_small = std::abs(v.g) < kFlatTolerance * (1.0 + g_scale);

    if (f_small && g_small) return {MembershipStatus::flat_band, std::nullopt};
    if (g_small) {
        // G = 2 sin(x ell)(x^3 - x): decide which factor vanishes.
        const bool lattice_point = std::abs(std::sin(x * m.ell())) < std::abs(x - 1.0);
        return {lattice_point ? MembershipStatus::excluded_lattice_point : MembershipStatus::gap, std::nullopt};
    }
    const double q = -v.f / v.g;
    return {std::abs(q) <= 2.0 ? MembershipStatus::in_band : MembershipStatus::gap, q};
}

BandSet band_structure(const LatticeModel& m, Branch branch, double lo, double hi, int grid, double tol) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) throw Error(ErrorCode::invalid_argument, "band_structure: need 0 < lo < hi");
    if (grid < 100) throw Error(ErrorCode::invalid_argument, "band_structure: grid must be at least 100");
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "band_structure: tol must be positive");

    double spacing = std::min(seed_spacing(m), (hi - lo) / grid);
    // Near k = pi n / ell the bands and the gap around the excluded point
    // shrink like 1/(ell k); keep several seeds across each.
    if (branch == Branch::positive) spacing = std::min(spacing, 1.0 / (2.0 * m.ell() * hi));
    const double cells_d = std::ceil((hi - lo) / spacing);
    if (cells_d > 5e7) throw Error(ErrorCode::invalid_argument, "band_structure: range too large for the seed grid");
    const int cells = static_cast<int>(cells_d);

    auto center_fn = [&](double x) {
        const auto v = fg_scaled(m, x, branch);
        return v.f + 2.0 * v.g;
    };
    auto corner_fn = [&](double x) {
        const auto v = fg_scaled(m, x, branch);
        return v.f - 2.0 * v.g;
    };

    struct Edge {
        double x;
        EdgeKind kind;
    };
    std::vector<Edge> edges;
    for (double r : find_roots(center_fn, lo, hi, cells, tol)) edges.push_back({r, EdgeKind::center});
    for (double r : find_roots(corner_fn, lo, hi, cells, tol)) edges.push_back({r, EdgeKind::corner});
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.x < b.x; });

    std::vector<Edge> breaks{{lo, EdgeKind::range_limit}};
    for (const auto& e : edges) {
        if (e.x - breaks.back().x <= 8.0 * tol || hi - e.x <= 8.0 * tol) continue;
        breaks.push_back(e);
    }
    breaks.push_back({hi, EdgeKind::range_limit});

    BandSet out;
    out.branch = branch;
    bool open = false;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p].x;
        const double b = breaks[p + 1].x;
        const double q = q_from(fg_scaled(m, 0.5 * (a + b), branch));
        const bool inside = std::abs(q) <= 2.0;
        if (inside && !open) {
            out.intervals.push_back({a, b, breaks[p].kind, breaks[p + 1].kind});
            open = true;
        } else if (inside) {
            out.intervals.back().hi = b;
            out.intervals.back().edge_hi = breaks[p + 1].kind;
        } else {
            open = false;
        }
    }

    if (branch == Branch::positive) {
        std::vector<double> candidates;
        if (lo <= 1.0 && 1.0 <= hi) candidates.push_back(1.0);
        const auto n_lo = static_cast<long long>(std::ceil(lo * m.ell() / kPi));
        const auto n_hi = static_cast<long long>(std::floor(hi * m.ell() / kPi));
        for (long long n = std::max(1LL, n_lo); n <= n_hi; ++n) candidates.push_back(kPi * static_cast<double>(n) / m.ell());
        std::sort(candidates.begin(), candidates.end());
        for (double x : candidates)
            if (membership(m, x, branch).status == MembershipStatus::flat_band) out.flat_points.push_back(x);
    }
    return out;
}

double flat_band_mu(double ell) {
    check_positive(ell, "ell");
    const double quarter = 0.5 * kPi;
    double r = std::fmod(quarter - ell, quarter);
    if (r < 0.0) r += quarter;
    if (r >= quarter) r = 0.0;
    return r;
}

double band_width_bound(const LatticeModel& m, int n) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "band index must be at least 1");
    if (!(m.mu() > 0.0 && m.mu() < 0.5 * kPi))
        throw Error(ErrorCode::invalid_argument, "band-width bound diverges at mu = 0 and is undefined at mu = pi/2");
    return 8.0 / (m.ell() * std::tan(m.mu()));
}

double p_sigma_estimate(const LatticeModel& m, double k_max, int grid) {
    check_positive(k_max, "k_max");
    const auto bands = band_structure(m, Branch::positive, 1e-9 * k_max, k_max, grid);
    double measure = 0.0;
    for (const auto& b : bands.intervals) measure += b.hi * b.hi - b.lo * b.lo;
    return measure / (k_max * k_max);
}

std::pair<double, double> negative_asymptotic_roots(double mu) {
    if (!(mu > 0.0 && mu < 0.5 * kPi)) throw Error(ErrorCode::invalid_argument, "asymptotic roots need mu in (0, pi/2)");
    return {std::tan(0.5 * mu), std::tan(0.5 * mu + 0.25 * kPi)};
}

FermiSurface fermi_surface(const LatticeModel& m, double k, int grid, Branch branch) {
    if (grid < 4) throw Error(ErrorCode::invalid_argument, "fermi_surface: grid must be at least 4");
    if (grid % 2 != 0) ++grid;  // keep nodes on theta = 0 and theta = +-pi

    // Band edges come out of bisection and may sit a rounding step on the gap
    // side; within `degenerate` of +-2 the contour is the collapsed point.
    constexpr double degenerate = 1e-9;
    const auto verdict = membership(m, k, branch);
    if (verdict.status == MembershipStatus::flat_band)
        throw Error(ErrorCode::invalid_argument, "fermi_surface: flat band, every quasimomentum solves");
    const bool at_edge = verdict.q_star && std::abs(std::abs(*verdict.q_star) - 2.0) <= degenerate;
    if (verdict.status != MembershipStatus::in_band && !at_edge)
        throw Error(ErrorCode::empty_contour, "fermi_surface: k lies in a spectral gap");

    FermiSurface fs;
    fs.k = k;
    fs.q_star = *verdict.q_star;
    const double q = fs.q_star;
    if (q >= 2.0 - degenerate) {
        fs.points.push_back({0.0, 0.0});
        return fs;
    }
    if (q <= -2.0 + degenerate) {
        fs.points.push_back({kPi, kPi});
        return fs;
    }

    const int n = grid;
    const auto node = [&](int i) { return -kPi + kTwoPi * static_cast<double>(i) / n; };
    std::vector<double> cosv(n + 1);
    for (int i = 0; i <= n; ++i) cosv[i] = std::cos(node(i));
    const auto phi = [&](int i, int j) { return cosv[i] + cosv[j] - q; };

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    // Horizontal edges (i,j)-(i+1,j) and vertical edges (i,j)-(i,j+1).
    std::vector<std::size_t> h_edge((n + 1) * (n + 1), none);
    std::vector<std::size_t> v_edge((n + 1) * (n + 1), none);

    const auto crossing = [&](int i, int j, bool horizontal) -> std::size_t {
        auto& slot = horizontal ? h_edge[i * (n + 1) + j] : v_edge[i * (n + 1) + j];
        if (slot != none) return slot;
        const double fixed = horizontal ? cosv[j] : cosv[i];
        const double a = horizontal ? node(i) : node(j);
        const double b = horizontal ? node(i + 1) : node(j + 1);
        const double t = bisect([&](double s) { return std::cos(s) + fixed - q; }, a, b, 1e-14);
        fs.points.push_back(horizontal ? Quasimomentum{t, node(j)} : Quasimomentum{node(i), t});
        slot = fs.points.size() - 1;
        return slot;
    };

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const bool sa = phi(i, j) > 0.0;
            const bool sb = phi(i + 1, j) > 0.0;
            const bool sc = phi(i + 1, j + 1) > 0.0;
            const bool sd = phi(i, j + 1) > 0.0;
            std::size_t bottom = none, right = none, top = none, left = none;
            if (sa != sb) bottom = crossing(i, j, true);
            if (sb != sc) right = crossing(i + 1, j, false);
            if (sd != sc) top = crossing(i, j + 1, true);
            if (sa != sd) left = crossing(i, j, false);

            const int count = (bottom != none) + (right != none) + (top != none) + (left != none);
            if (count == 2) {
                std::size_t ends[2];
                int e = 0;
                for (std::size_t idx : {bottom, right, top, left})
                    if (idx != none) ends[e++] = idx;
                fs.segments.emplace_back(ends[0], ends[1]);
            } else if (count == 4) {
                const double xc = 0.5 * (node(i) + node(i + 1));
                const double yc = 0.5 * (node(j) + node(j + 1));
                const bool center = std::cos(xc) + std::cos(yc) - q > 0.0;
                if (center == sa) {
                    fs.segments.emplace_back(bottom, right);
                    fs.segments.emplace_back(top, left);
                } else {
                    fs.segments.emplace_back(bottom, left);
                    fs.segments.emplace_back(right, top);
                }
            }
        }
    }

    if (fs.points.empty()) {
        // Contour smaller than one mesh cell around the extremum of Q.
        fs.points.push_back(q > 0.0 ? Quasimomentum{0.0, 0.0} : Quasimomentum{kPi, kPi});
    }
    return fs;
}

namespace {

struct Extremum {
    std::size_t segment;
    bool is_max;
    double k;
    double value;
};

std::vector<double> segment_bounds(double ell, double k_lo, double k_hi) {
    std::vector<double> b{k_lo};
    if (k_lo < 1.0 && 1.0 < k_hi) b.push_back(1.0);
    const auto n_lo = static_cast<long long>(std::floor(k_lo * ell / kPi)) + 1;
    for (long long n = std::max(1LL, n_lo);; ++n) {
        const double x = kPi * static_cast<double>(n) / ell;
        if (x >= k_hi) break;
        if (x > k_lo) b.push_back(x);
    }
    b.push_back(k_hi);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

// Extrema of q* strictly inside [a, b], from derivative sign changes at
// `samples` cell midpoints.
void scan_extrema(const LatticeModel& m, std::size_t segment, double a, double b, int samples,
                  std::vector<Extremum>& out) {
    const double step = (b - a) / samples;
    double x0 = a + 0.5 * step;
    double d0 = q_star_derivative(m, x0);
    for (int s = 1; s < samples; ++s) {
        const double x1 = a + (s + 0.5) * step;
        const double d1 = q_star_derivative(m, x1);
        if (std::isfinite(d0) && std::isfinite(d1) && d0 != 0.0 && (d0 > 0.0) != (d1 > 0.0)) {
            const double xe = bisect([&](double x) { return q_star_derivative(m, x); }, x0, x1, 1e-13);
            out.push_back({segment, d0 > 0.0, xe, q_star(m, xe, Branch::positive)});
        }
        x0 = x1;
        d0 = d1;
    }
}

std::optional<Extremum> extremum_near(const LatticeModel& m, const Extremum& guess, double a, double b,
                                      double window) {
    const double lo = std::max(a + 1e-12, guess.k - window);
    const double hi = std::min(b - 1e-12, guess.k + window);
    if (!(hi > lo)) return std::nullopt;
    std::vector<Extremum> found;
    scan_extrema(m, guess.segment, lo, hi, 32, found);
    std::optional<Extremum> best;
    for (const auto& e : found) {
        if (e.is_max != guess.is_max) continue;
        if (!best || std::abs(e.k - guess.k) < std::abs(best->k - guess.k)) best = e;
    }
    return best;
}

// Distance of an extremum from the band edge it can touch, positive when the
// extremum pokes into the gap (a maximum above +2 or a minimum below -2).
double touch_gap(const Extremum& e) { return e.is_max ? e.value - 2.0 : -(e.value + 2.0); }

const Extremum* nearest_partner(const std::vector<Extremum>& row, const Extremum& e) {
    const Extremum* best = nullptr;
    for (const auto& f : row) {
        if (f.segment != e.segment || f.is_max != e.is_max) continue;
        if (!best || std::abs(f.k - e.k) < std::abs(best->k - e.k)) best = &f;
    }
    return best;
}

}  // namespace

std::vector<DiracPoint> dirac_points(double ell, double mu_lo, double mu_hi, int grid, const DiracSearchOptions& options) {
    check_positive(ell, "ell");
    if (!(mu_lo > 0.0 && mu_hi < 0.5 * kPi && mu_lo < mu_hi))
        throw Error(ErrorCode::invalid_argument, "dirac_points: mu range must lie inside (0, pi/2)");
    if (grid < 2) throw Error(ErrorCode::invalid_argument, "dirac_points: grid must be at least 2");
    if (!(options.k_lo > 0.0 && options.k_hi > options.k_lo))
        throw Error(ErrorCode::invalid_argument, "dirac_points: need 0 < k_lo < k_hi");
    if (options.samples_per_segment < 8) throw Error(ErrorCode::invalid_argument, "dirac_points: too few samples");

    const auto bounds = segment_bounds(ell, options.k_lo, options.k_hi);
    const auto mu_at = [&](int i) { return mu_lo + (mu_hi - mu_lo) * static_cast<double>(i) / grid; };

    const auto sweep = detail::parallel_map<std::vector<Extremum>>(
        static_cast<std::size_t>(grid) + 1, options.threads, [&](std::size_t i) {
            const LatticeModel m(mu_at(static_cast<int>(i)), ell);
            std::vector<Extremum> ext;
            for (std::size_t s = 0; s + 1 < bounds.size(); ++s)
                scan_extrema(m, s, bounds[s], bounds[s + 1], options.samples_per_segment, ext);
            return ext;
        });

    // Two ways a gap between edges of one kind can close along the sweep:
    // the margin changes sign between nodes, or it dips to a local minimum on
    // the gap side and pinches off there (the conical case).
    enum class Kind { crossing, pinch };
    struct Candidate {
        Kind kind;
        double lo, hi;
        Extremum start;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i <= grid; ++i) {
        for (const auto& e : sweep[i]) {
            const Extremum* next = i < grid ? nearest_partner(sweep[i + 1], e) : nullptr;
            const Extremum* prev = i > 0 ? nearest_partner(sweep[i - 1], e) : nullptr;
            const double h = touch_gap(e);
            if (next && (h >= 0.0) != (touch_gap(*next) >= 0.0))
                candidates.push_back({Kind::crossing, mu_at(i), mu_at(i + 1), e});
            if (next && prev && h >= 0.0 && touch_gap(*prev) > h && touch_gap(*next) > h)
                candidates.push_back({Kind::pinch, mu_at(i - 1), mu_at(i + 1), e});
        }
    }

    const auto refined = detail::parallel_map<std::optional<DiracPoint>>(
        candidates.size(), options.threads, [&](std::size_t c) -> std::optional<DiracPoint> {
            const auto& cand = candidates[c];
            const double a = bounds[cand.start.segment];
            const double b = bounds[cand.start.segment + 1];
            const double window = 4.0 * (b - a) / options.samples_per_segment;
            Extremum cur = cand.start;
            bool lost = false;
            const auto track = [&](double mu) {
                const auto e = extremum_near(LatticeModel(mu, ell), cur, a, b, window);
                if (!e) {
                    lost = true;
                    return std::numeric_limits<double>::infinity();
                }
                cur = *e;
                return touch_gap(cur);
            };

            double lo = cand.lo;
            double hi = cand.hi;
            double mu = 0.0;
            if (cand.kind == Kind::crossing) {
                const bool lo_sign = touch_gap(cur) >= 0.0;
                while (hi - lo > options.mu_tol && !lost) {
                    const double mid = 0.5 * (lo + hi);
                    if ((track(mid) >= 0.0) == lo_sign)
                        lo = mid;
                    else
                        hi = mid;
                }
                mu = 0.5 * (lo + hi);
            } else {
                // Golden-section search for the minimum of the margin.
                const double r = 0.5 * (std::sqrt(5.0) - 1.0);
                double x1 = hi - r * (hi - lo);
                double x2 = lo + r * (hi - lo);
                double f1 = track(x1);
                double f2 = track(x2);
                while (hi - lo > options.mu_tol && !lost) {
                    if (f1 < f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - r * (hi - lo);
                        f1 = track(x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + r * (hi - lo);
                        f2 = track(x2);
                    }
                }
                mu = 0.5 * (lo + hi);
            }
            const double margin = track(mu);
            if (lost) return std::nullopt;
            if (cand.kind == Kind::pinch && margin > kPinchTolerance) return std::nullopt;
            // A touching pinned to a pole of q* is the k = 1 flat band, not a cone.
            if (std::abs(cur.k - a) < 1e-6 || std::abs(cur.k - b) < 1e-6) return std::nullopt;
            return DiracPoint{mu, cur.k, cur.is_max ? EdgeKind::center : EdgeKind::corner};
        });

    std::vector<DiracPoint> out;
    for (const auto& r : refined) {
        if (!r) continue;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const DiracPoint& p) {
            return p.location == r->location && std::abs(p.mu - r->mu) < 1e-6 && std::abs(p.k - r->k) < 1e-6;
        });
        if (!duplicate) out.push_back(*r);
    }
    std::sort(out.begin(), out.end(), [](const DiracPoint& x, const DiracPoint& y) {
        return x.mu != y.mu ? x.mu < y.mu : x.k < y.k;
    });
    return out;
}

const char* to_string(Branch b) { return b == Branch::positive ? "positive" : "negative"; }

const char* to_string(EdgeKind e) {
    switch (e) {
        case EdgeKind::center: return "center";
        case EdgeKind::corner: return "corner";
        case EdgeKind::range_limit: return "range";
    }
    return "range";
}

const char* to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::in_band: return "in_band";
        case MembershipStatus::gap: return "gap";
        case MembershipStatus::flat_band: return "flat_band";
        case MembershipStatus::excluded_lattice_point: return "excluded_lattice_point";
    }
    return "gap";
}

}  // namespace qgraph
