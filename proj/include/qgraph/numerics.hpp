#pragma once

// Small dense complex linear algebra and scalar root finding.
//
// Matrices here are at most a few dozen rows (vertex degrees, the 4x4 Bloch
// system), so everything is row-major, unblocked and allocation-light.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
    invalid_argument = 1,
    dimension_mismatch,
    singular_matrix,
    not_unitary,
    not_circulant,
    empty_contour,
    numerical_failure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n);
    Matrix(std::size_t n, std::vector<Complex> entries);

    static Matrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

    Matrix transpose() const;
    Matrix adjoint() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

private:
    std::size_t n_ = 0;
    std::vector<Complex> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
std::vector<Complex> mat_vec(const Matrix& a, std::span<const Complex> x);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |A*A - I|.
double unitarity_residual(const Matrix& a);

/// Relative pivot threshold used by solve_linear.
inline constexpr double kPivotThreshold = 1e-13;

/// Solves a X = b by Gaussian elimination with partial pivoting. Throws
/// ErrorCode::singular_matrix when a pivot is below kPivotThreshold times the
/// largest entry of its (original) row.
Matrix solve_linear(const Matrix& a, const Matrix& b);

/// Determinant by pivoted elimination. Exactly singular input gives 0.
Complex determinant(const Matrix& a);

/// Scans `grid` uniform subintervals of [a, b] for sign changes of f and
/// bisects each bracket until its width is below tol. Exact zeros on grid
/// nodes are reported as roots. Tangential zeros strictly inside a cell are
/// not seen. Result is sorted ascending.
std::vector<double> find_roots(const std::function<double(double)>& f, double a, double b,
                               int grid, double tol);

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace qgraph
