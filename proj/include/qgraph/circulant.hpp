#pragma once

// Circulant unitary vertex couplings.
//
// Row i of the matrix is the first row cyclically right-shifted i times, so
// U(i, j) = c[(j - i) mod n] with zero-based indices. Every such matrix is
// diagonalized by the discrete Fourier vectors
//
//     phi_m = n^{-1/2} (1, w^m, w^{2m}, ..., w^{(n-1)m}),   w = exp(2 pi i / n),
//
// with eigenvalue lambda_m = sum_k c[k] w^{mk}. Eigenphase arrays are indexed
// by this Fourier index m = 0..n-1; the 1-based eigenvector label j = n is the
// same vector as m = 0.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/numerics.hpp"

namespace qgraph {

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kDnrTolerance = 1e-9;

/// Eigenphases gamma_m in [0, 2 pi), lambda_m = exp(i gamma_m).
class EigenPhases {
public:
    EigenPhases() = default;
    /// Normalizes every entry into [0, 2 pi). Throws on non-finite input.
    explicit EigenPhases(std::vector<double> gamma);

    std::size_t size() const noexcept { return gamma_.size(); }
    std::span<const double> values() const noexcept { return gamma_; }
    double operator[](std::size_t m) const { return gamma_[m]; }

private:
    std::vector<double> gamma_;
};

/// Reduces an angle into [0, 2 pi).
double normalize_phase(double angle);

class CirculantUnitary {
public:
    /// Validates length >= 2, finite entries and unitarity within
    /// kUnitarityTolerance (ErrorCode::not_unitary otherwise).
    static CirculantUnitary from_first_row(std::vector<Complex> row);

    /// Inverse DFT: c[k] = (1/n) sum_m lambda_m w^{-mk}.
    static CirculantUnitary from_eigenphases(const EigenPhases& phases);

    std::size_t size() const noexcept { return row_.size(); }
    std::span<const Complex> first_row() const noexcept { return row_; }
    Complex entry(std::size_t i, std::size_t j) const { return row_[(j + size() - i) % size()]; }
    Matrix matrix() const;

private:
    explicit CirculantUnitary(std::vector<Complex> row) : row_(std::move(row)) {}
    std::vector<Complex> row_;
};

/// w^p for w = exp(2 pi i / n), reduced mod n before evaluating.
Complex root_of_unity(std::size_t n, long long p);

/// Complex eigenvalues lambda_m, m = 0..n-1.
std::vector<Complex> spectrum(const CirculantUnitary& u);

EigenPhases eigenvalues(const CirculantUnitary& u);

/// Normalized Fourier eigenvector with 1-based label j in 1..n.
std::vector<Complex> eigenvector(std::size_t n, std::size_t j);

/// Permutation fixing edge 1 and exchanging edges j and n + 2 - j (1-based).
Matrix parity_operator(std::size_t n);

/// Theta_ij = (conj(phi_i), phi_j) over the Fourier eigenvectors, rows and
/// columns labelled by m = j mod n so that it acts on edge indices. Should
/// coincide with parity_operator(n).
Matrix parity_gram(std::size_t n);

struct SymmetryReport {
    bool time_reversal = false;
    bool pt_symmetric = false;
    std::vector<std::size_t> parity_fixed_edges;  // 1-based
};

SymmetryReport symmetry_report(const CirculantUnitary& u);

struct DnrDecomposition {
    std::size_t dirichlet = 0;
    std::size_t neumann = 0;
    std::size_t robin = 0;
    double tol = kDnrTolerance;
};

DnrDecomposition dnr_decomposition(const CirculantUnitary& u, double tol = kDnrTolerance);

/// U = u I + v J; requires |u| = 1 and |u + n v| = 1.
CirculantUnitary permutation_invariant(std::size_t n, Complex u, Complex v);

/// factor * R with R the cyclic shift (first row (0, 1, 0, ..., 0)).
CirculantUnitary shift_coupling(std::size_t n, Complex factor = 1.0);

/// delta coupling of strength alpha: U = -I + 2/(n + i alpha) J.
CirculantUnitary delta_coupling(std::size_t n, double alpha);

/// {"n": int, "first_row": [[re, im], ...]}
std::string to_json(const CirculantUnitary& u);
CirculantUnitary circulant_from_json(std::string_view text);

}  // namespace qgraph
