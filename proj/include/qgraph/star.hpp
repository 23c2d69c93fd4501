#pragma once

// Star graph with a single vertex: matching condition
//
//     (U - I) Psi + i ell (U + I) Psi' = 0,
//
// derivatives taken in the outward direction on every edge.

#include <cstddef>
#include <optional>
#include <vector>

#include "qgraph/circulant.hpp"
#include "qgraph/numerics.hpp"

namespace qgraph {

class VertexCoupling {
public:
    VertexCoupling(CirculantUnitary u, double ell);
    /// Dense unitary; only the scattering path accepts these.
    VertexCoupling(Matrix u, double ell);

    std::size_t size() const noexcept { return matrix_.size(); }
    double ell() const noexcept { return ell_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    bool is_circulant() const noexcept { return circulant_.has_value(); }
    /// Throws ErrorCode::not_circulant for dense couplings.
    const CirculantUnitary& circulant() const;

private:
    Matrix matrix_;
    std::optional<CirculantUnitary> circulant_;
    double ell_;
};

struct BoundaryData {
    std::vector<Complex> psi;
    std::vector<Complex> dpsi;
};

std::vector<Complex> boundary_residual(const VertexCoupling& c, const BoundaryData& b);

struct ScatteringMatrix {
    double k = 0.0;
    Matrix s;
};

/// S(k) = [(k ell - 1) I + (k ell + 1) U] [(k ell + 1) I + (k ell - 1) U]^{-1}.
/// Circulant couplings go through their eigenphases; dense ones through
/// solve_linear.
ScatteringMatrix s_matrix(const VertexCoupling& c, double k);

/// Always the dense linear solve, regardless of structure.
ScatteringMatrix s_matrix_dense(const VertexCoupling& c, double k);

/// Boundary values of the scattering solution with unit incoming wave on
/// edge j (0-based): psi_m(x) = delta_mj e^{-ikx} + S_mj e^{ikx}.
BoundaryData plane_wave_data(const ScatteringMatrix& s, std::size_t j);

enum class Limit { zero, infinity };

/// k -> 0 or k -> infinity limit of S for circulant couplings, built from
/// spectral projectors. At infinity the eigenvalue -1 stays -1 and every other
/// branch tends to 1; at zero the eigenvalue 1 stays 1 and every other branch
/// tends to -1.
Matrix s_matrix_limit(const VertexCoupling& c, Limit end, double tol = kDnrTolerance);

/// Closed form of S for U = exp(i mu) R with eta = (1 - k ell)/(1 + k ell):
///   S_ij = [-eta (1 - e^n eta^{n-2}) delta_ij
///           + (1 - delta_ij)(1 - eta^2) e (e eta)^{(j-i-1) mod n}] / (1 - e^n eta^n).
ScatteringMatrix s_matrix_shift_closed_form(std::size_t n, double mu, double ell, double k);

struct BoundStateList {
    std::vector<double> kappas;            // ascending, > 0
    std::vector<double> energies;          // -kappa^2, same order
    std::vector<double> antibound_kappas;  // ascending, < 0
};

/// Eigenphase gamma in (0, pi) gives kappa = tan(gamma/2)/ell, (pi, 2 pi) an
/// antibound value; phases within 1e-12 of 0 or pi give neither.
BoundStateList bound_states(const VertexCoupling& c);

}  // namespace qgraph
