#include "qgraph/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qgraph {

Matrix::Matrix(std::size_t n) : n_(n), entries_(n * n, Complex{}) {}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n * n) {
        throw Error(ErrorCode::dimension_mismatch,
                    "matrix of order " + std::to_string(n) + " needs " + std::to_string(n * n) +
                        " entries, got " + std::to_string(entries_.size()));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::adjoint() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (other.n_ != n_) throw Error(ErrorCode::dimension_mismatch, "matrix sum: order mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (other.n_ != n_) throw Error(ErrorCode::dimension_mismatch, "matrix difference: order mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "mat_mul: order mismatch");
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<Complex> mat_vec(const Matrix& a, std::span<const Complex> x) {
    if (a.size() != x.size()) throw Error(ErrorCode::dimension_mismatch, "mat_vec: length mismatch");
    std::vector<Complex> y(x.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "max_abs_diff: order mismatch");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

double unitarity_residual(const Matrix& a) {
    return max_abs_diff(mat_mul(a.adjoint(), a), Matrix::identity(a.size()));
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw Error(ErrorCode::dimension_mismatch, "solve_linear: order mismatch");

    Matrix lu = a;
    Matrix x = b;
    std::vector<double> row_scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) row_scale[i] = std::max(row_scale[i], std::abs(a(i, j)));

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0 || best < kPivotThreshold * row_scale[piv]) {
            throw Error(ErrorCode::singular_matrix,
                        "solve_linear: pivot " + std::to_string(best) + " below threshold in column " +
                            std::to_string(col));
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(piv, j), lu(col, j));
                std::swap(x(piv, j), x(col, j));
            }
            std::swap(row_scale[piv], row_scale[col]);
        }
        const Complex inv = 1.0 / lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) * inv;
            if (f == Complex{}) continue;
            lu(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
            for (std::size_t j = 0; j < n; ++j) x(r, j) -= f * x(col, j);
        }
    }

    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = x(ii, c);
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x(j, c);
            x(ii, c) = s / lu(ii, ii);
        }
    }
    return x;
}

Complex determinant(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix lu = a;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
            det = -det;
        }
        det *= lu(col, col);
        const Complex inv = 1.0 / lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) * inv;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return det;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200 && hi - lo >= tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> find_roots(const std::function<double(double)>& f, double a, double b, int grid,
                               double tol) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
        throw Error(ErrorCode::invalid_argument, "find_roots: invalid interval");
    }
    if (grid < 2) throw Error(ErrorCode::invalid_argument, "find_roots: grid must be at least 2");
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "find_roots: tol must be positive");

    std::vector<double> roots;
    const double h = (b - a) / grid;
    double x0 = a;
    double f0 = f(x0);
    if (f0 == 0.0) roots.push_back(x0);
    for (int i = 1; i <= grid; ++i) {
        const double x1 = (i == grid) ? b : a + i * h;
        const double f1 = f(x1);
        if (f1 == 0.0) {
            roots.push_back(x1);
        } else if (f0 != 0.0 && std::isfinite(f0) && std::isfinite(f1) && ((f0 < 0.0) != (f1 < 0.0))) {
            roots.push_back(bisect(f, x0, x1, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace qgraph
