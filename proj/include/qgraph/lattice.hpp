#pragma once

// Square lattice of edge length ell with the coupling U = exp(i mu) R at every
// vertex (vertex length scale 1).
//
// With Bloch phases (theta1, theta2) the spectral condition is the quartic
// sum_j c_j x^j = 0 (x = k for E = k^2 > 0, x = kappa for E = -kappa^2 < 0).
// The quasimomentum enters only through Q = cos(theta1) + cos(theta2), and only
// in c_1 and c_3, so the quartic splits as F(x) + Q G(x). A value x is in the
// spectrum iff q*(x) = -F(x)/G(x) lies in [-2, 2]; band edges sit at q* = +2
// (zone center) and q* = -2 (zone corner).

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qgraph/numerics.hpp"

namespace qgraph {

enum class Branch { positive, negative };

class LatticeModel {
public:
    /// mu in [0, pi/2], ell > 0.
    LatticeModel(double mu, double ell);

    double mu() const noexcept { return mu_; }
    double ell() const noexcept { return ell_; }
    Complex epsilon() const { return std::polar(1.0, mu_); }

private:
    double mu_;
    double ell_;
};

struct Quasimomentum {
    double theta1 = 0.0;
    double theta2 = 0.0;

    double q() const;
};

struct SpectralCoefficients {
    Branch branch = Branch::positive;
    std::array<double, 5> c{};

    /// sum_j c_j x^j
    double evaluate(double x) const;
};

/// 4x4 Bloch determinant in eta = (1-k)/(1+k), xi^2 = exp(i k ell), Bloch
/// factors exp(i theta_j). Complex k allowed (k = i kappa for bound bands).
Complex secular_determinant(const LatticeModel& m, Complex k, const Quasimomentum& q);

/// 8 i eps^2 exp(i(theta1 + theta2)) / (k + 1)^4; the determinant equals this
/// times the quartic.
Complex secular_prefactor(const LatticeModel& m, Complex k, const Quasimomentum& q);

SpectralCoefficients coefficients_positive(const LatticeModel& m, double k, const Quasimomentum& q);
SpectralCoefficients coefficients_negative(const LatticeModel& m, double kappa, const Quasimomentum& q);

struct ReducedFG {
    double f = 0.0;
    double g = 0.0;
};

/// Positive:  G = 2 sin(k ell)(k^3 - k),
///            F = sin2mu [(1 + 3 cos 2k ell) k^2 - sin^2(k ell)(1 + k^4)]
///                + 4 cos2mu cos(k ell) sin(k ell)(k + k^3).
/// Negative:  G = 2 sinh(kappa ell)(kappa^3 + kappa),
///            F = sin2mu [sinh^2(kappa ell)(1 + kappa^4) - (1 + 3 cosh 2 kappa ell) kappa^2]
///                + 4 cos2mu cosh(kappa ell) sinh(kappa ell)(kappa^3 - kappa).
ReducedFG reduced_fg(const LatticeModel& m, double x, Branch branch);

/// -F/G, with the negative branch evaluated in overflow-safe scaled form.
/// Infinite where G vanishes.
double q_star(const LatticeModel& m, double x, Branch branch);

enum class MembershipStatus { in_band, gap, flat_band, excluded_lattice_point };

struct MembershipVerdict {
    MembershipStatus status = MembershipStatus::gap;
    std::optional<double> q_star;
};

MembershipVerdict membership(const LatticeModel& m, double x, Branch branch);

enum class EdgeKind { center, corner, range_limit };

struct BandInterval {
    double lo = 0.0;
    double hi = 0.0;
    EdgeKind edge_lo = EdgeKind::range_limit;
    EdgeKind edge_hi = EdgeKind::range_limit;
};

struct BandSet {
    Branch branch = Branch::positive;
    std::vector<BandInterval> intervals;  // on the k (or kappa) axis, ascending
    std::vector<double> flat_points;      // isolated infinitely degenerate points
};

/// Band edges are the sign changes of F + 2G (center) and F - 2G (corner) on a
/// uniform seed grid, refined by bisection to tol; pieces between edges are
/// classified by q* at their midpoint.
BandSet band_structure(const LatticeModel& m, Branch branch, double lo, double hi, int grid,
                       double tol = 1e-12);

/// pi/2 - ell reduced into [0, pi/2): the mu at which k = 1 is a flat band.
double flat_band_mu(double ell);

/// (8/ell) cot(mu); mu must lie strictly inside (0, pi/2).
double band_width_bound(const LatticeModel& m, int n);

/// |sigma(H) cap [0, K]| / K on the energy axis, K = k_max^2.
double p_sigma_estimate(const LatticeModel& m, double k_max, int grid);

/// Roots tan(mu/2) and tan(mu/2 + pi/4) of
/// kappa^4 + 1 - 6 kappa^2 + 4 kappa (kappa^2 - 1) cot 2mu.
std::pair<double, double> negative_asymptotic_roots(double mu);

struct FermiSurface {
    double k = 0.0;
    double q_star = 0.0;
    std::vector<Quasimomentum> points;
    /// Index pairs into points forming the contour polyline pieces.
    std::vector<std::pair<std::size_t, std::size_t>> segments;
};

/// Contour cos(theta1) + cos(theta2) = q*(k) over the Brillouin zone
/// [-pi, pi]^2 by marching squares on a grid x grid mesh; crossings refined by
/// bisection along cell edges. A contour collapsed to the zone center or
/// corner (|q*| within 1e-9 of 2, either side) is reported as that single
/// point. Throws ErrorCode::empty_contour when k is not in a band.
FermiSurface fermi_surface(const LatticeModel& m, double k, int grid, Branch branch = Branch::positive);

struct DiracPoint {
    double mu = 0.0;
    double k = 0.0;
    EdgeKind location = EdgeKind::center;
};

struct DiracSearchOptions {
    double k_lo = 0.05;
    double k_hi = 20.0;
    int samples_per_segment = 256;
    double mu_tol = 1e-8;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Largest margin, in units of q*, still accepted as a pinched-off gap.
inline constexpr double kPinchTolerance = 1e-9;

/// Sweeps mu over a grid of the given range and tracks every interior
/// extremum of q*(k). A gap between two edges of the same kind closes where a
/// local maximum of q* meets +2 (center) or a local minimum meets -2 (corner).
/// The extremum either crosses that level (refined by bisection in mu) or
/// touches it from the gap side (refined by golden-section search and kept
/// when the remaining margin is below kPinchTolerance). Sorted by (mu, k).
std::vector<DiracPoint> dirac_points(double ell, double mu_lo, double mu_hi, int grid,
                                     const DiracSearchOptions& options = {});

const char* to_string(Branch b);
const char* to_string(EdgeKind e);
const char* to_string(MembershipStatus s);

}  // namespace qgraph
