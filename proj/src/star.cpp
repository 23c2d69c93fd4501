#include "qgraph/star.hpp"

#include <algorithm>
#include <cmath>

namespace qgraph {

namespace {

void check_ell(double ell) {
    if (!(ell > 0.0) || !std::isfinite(ell))
        throw Error(ErrorCode::invalid_argument, "length scale ell must be positive and finite");
}

void check_momentum(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::invalid_argument, "momentum k must be positive");
}

// Circulant matrix with eigenvalues mu_m on the Fourier basis.
Matrix assemble_from_spectrum(const std::vector<Complex>& mu) {
    const std::size_t n = mu.size();
    std::vector<Complex> row(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex s{};
        for (std::size_t m = 0; m < n; ++m)
            s += mu[m] * root_of_unity(n, -static_cast<long long>(m) * static_cast<long long>(k));
        row[k] = s / static_cast<double>(n);
    }
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = row[(j + n - i) % n];
    return out;
}

}  // namespace

VertexCoupling::VertexCoupling(CirculantUnitary u, double ell)
    : matrix_(u.matrix()), circulant_(std::move(u)), ell_(ell) {
    check_ell(ell);
}

VertexCoupling::VertexCoupling(Matrix u, double ell) : matrix_(std::move(u)), ell_(ell) {
    check_ell(ell);
    if (matrix_.size() == 0) throw Error(ErrorCode::invalid_argument, "coupling matrix is empty");
    for (const auto& z : matrix_.entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorCode::invalid_argument, "coupling matrix has a non-finite entry");
    const double res = unitarity_residual(matrix_);
    if (!(res < kUnitarityTolerance))
        throw Error(ErrorCode::not_unitary, "coupling matrix is not unitary (residual " + std::to_string(res) + ")");
}

const CirculantUnitary& VertexCoupling::circulant() const {
    if (!circulant_) throw Error(ErrorCode::not_circulant, "operation requires a circulant coupling");
    return *circulant_;
}

std::vector<Complex> boundary_residual(const VertexCoupling& c, const BoundaryData& b) {
    const std::size_t n = c.size();
    if (b.psi.size() != n || b.dpsi.size() != n)
        throw Error(ErrorCode::dimension_mismatch, "boundary data length does not match the vertex degree");
    const Matrix& u = c.matrix();
    const Complex il(0.0, c.ell());
    std::vector<Complex> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = -b.psi[i] + il * b.dpsi[i];
        for (std::size_t j = 0; j < n; ++j) s += u(i, j) * (b.psi[j] + il * b.dpsi[j]);
        r[i] = s;
    }
    return r;
}

ScatteringMatrix s_matrix_dense(const VertexCoupling& c, double k) {
    check_momentum(k);
    const double kl = k * c.ell();
    const std::size_t n = c.size();
    const Matrix id = Matrix::identity(n);
    const Matrix num = (kl - 1.0) * id + (kl + 1.0) * c.matrix();
    const Matrix den = (kl + 1.0) * id + (kl - 1.0) * c.matrix();
    // num and den are polynomials in U, so den^{-1} num = num den^{-1}.
    return {k, solve_linear(den, num)};
}

ScatteringMatrix s_matrix(const VertexCoupling& c, double k) {
    if (!c.is_circulant()) return s_matrix_dense(c, k);
    check_momentum(k);
    const double kl = k * c.ell();
    auto lambda = spectrum(c.circulant());
    for (auto& l : lambda) {
        const Complex den = (kl + 1.0) + (kl - 1.0) * l;
        if (std::abs(den) == 0.0) throw Error(ErrorCode::singular_matrix, "s_matrix: singular denominator");
        l = ((kl - 1.0) + (kl + 1.0) * l) / den;
    }
    return {k, assemble_from_spectrum(lambda)};
}

BoundaryData plane_wave_data(const ScatteringMatrix& s, std::size_t j) {
    const std::size_t n = s.s.size();
    if (j >= n) throw Error(ErrorCode::invalid_argument, "incoming edge index out of range");
    BoundaryData b{std::vector<Complex>(n), std::vector<Complex>(n)};
    const Complex ik(0.0, s.k);
    for (std::size_t m = 0; m < n; ++m) {
        const Complex in = (m == j) ? 1.0 : 0.0;
        const Complex out = s.s(m, j);
        b.psi[m] = in + out;
        b.dpsi[m] = ik * (out - in);
    }
    return b;
}

Matrix s_matrix_limit(const VertexCoupling& c, Limit end, double tol) {
    const auto& u = c.circulant();
    const std::size_t n = u.size();
    const auto lambda = spectrum(u);
    Matrix out(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex branch;
        if (end == Limit::infinity)
            branch = std::abs(lambda[m] + 1.0) < tol ? -1.0 : 1.0;
        else
            branch = std::abs(lambda[m] - 1.0) < tol ? 1.0 : -1.0;
        const auto phi = eigenvector(n, m == 0 ? n : m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) += branch * phi[i] * std::conj(phi[j]);
    }
    return out;
}

ScatteringMatrix s_matrix_shift_closed_form(std::size_t n, double mu, double ell, double k) {
    if (n < 3) throw Error(ErrorCode::invalid_argument, "closed-form shift S-matrix needs n >= 3");
    check_ell(ell);
    check_momentum(k);
    if (!(mu >= 0.0 && mu < kTwoPi / static_cast<double>(n)))
        throw Error(ErrorCode::invalid_argument, "closed-form shift S-matrix needs 0 <= mu < 2 pi / n");

    const Complex eps = std::polar(1.0, mu);
    const double eta = (1.0 - k * ell) / (1.0 + k * ell);
    const Complex eps_eta = eps * eta;

    // Powers by repeated multiplication so that 0^0 = 1 when eta = 0.
    std::vector<Complex> pow_ee(n + 1, 1.0);
    for (std::size_t p = 1; p <= n; ++p) pow_ee[p] = pow_ee[p - 1] * eps_eta;
    Complex eps_n = 1.0;
    double eta_nm2 = 1.0;
    for (std::size_t p = 0; p < n; ++p) eps_n *= eps;
    for (std::size_t p = 0; p + 2 < n; ++p) eta_nm2 *= eta;

    const Complex pref = 1.0 / (1.0 - pow_ee[n]);
    const Complex diag = -eta * (1.0 - eps_n * eta_nm2);
    Matrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                s(i, j) = pref * diag;
            } else {
                const std::size_t p = (j + 2 * n - i - 1) % n;
                s(i, j) = pref * (1.0 - eta * eta) * eps * pow_ee[p];
            }
        }
    return {k, s};
}

BoundStateList bound_states(const VertexCoupling& c) {
    constexpr double edge_tol = 1e-12;
    const auto phases = eigenvalues(c.circulant());
    BoundStateList out;
    for (double g : phases.values()) {
        if (g < edge_tol || std::abs(g - kPi) < edge_tol || kTwoPi - g < edge_tol) continue;
        const double kappa = std::tan(0.5 * g) / c.ell();
        if (g < kPi)
            out.kappas.push_back(kappa);
        else
            out.antibound_kappas.push_back(kappa);
    }
    std::sort(out.kappas.begin(), out.kappas.end());
    std::sort(out.antibound_kappas.begin(), out.antibound_kappas.end());
    for (double k : out.kappas) out.energies.push_back(-k * k);
    return out;
}

}  // namespace qgraph
