#include "qgraph/circulant.hpp"

#include <cmath>
#include <json.hpp>

namespace qgraph {

double normalize_phase(double angle) {
    double g = std::fmod(angle, kTwoPi);
    if (g < 0.0) g += kTwoPi;
    if (g >= kTwoPi) g = 0.0;
    return g;
}

EigenPhases::EigenPhases(std::vector<double> gamma) : gamma_(std::move(gamma)) {
    for (auto& g : gamma_) {
        if (!std::isfinite(g)) throw Error(ErrorCode::invalid_argument, "eigenphase is not finite");
        g = normalize_phase(g);
    }
}

Complex root_of_unity(std::size_t n, long long p) {
    const auto nn = static_cast<long long>(n);
    long long r = p % nn;
    if (r < 0) r += nn;
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

CirculantUnitary CirculantUnitary::from_first_row(std::vector<Complex> row) {
    if (row.size() < 2) throw Error(ErrorCode::invalid_argument, "circulant needs at least two edges");
    for (const auto& z : row) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorCode::invalid_argument, "circulant first row has a non-finite entry");
    }
    CirculantUnitary u(std::move(row));
    const double res = unitarity_residual(u.matrix());
    if (!(res < kUnitarityTolerance)) {
        throw Error(ErrorCode::not_unitary, "circulant first row is not unitary (residual " +
                                                std::to_string(res) + ")");
    }
    return u;
}

CirculantUnitary CirculantUnitary::from_eigenphases(const EigenPhases& phases) {
    const std::size_t n = phases.size();
    if (n < 2) throw Error(ErrorCode::invalid_argument, "circulant needs at least two eigenphases");
    std::vector<Complex> row(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex s{};
        for (std::size_t m = 0; m < n; ++m) {
            s += std::polar(1.0, phases[m]) *
                 root_of_unity(n, -static_cast<long long>(m) * static_cast<long long>(k));
        }
        row[k] = s / static_cast<double>(n);
    }
    return CirculantUnitary(std::move(row));
}

Matrix CirculantUnitary::matrix() const {
    const std::size_t n = size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(i, j);
    return m;
}

std::vector<Complex> spectrum(const CirculantUnitary& u) {
    const std::size_t n = u.size();
    auto c = u.first_row();
    std::vector<Complex> lambda(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex s{};
        for (std::size_t k = 0; k < n; ++k)
            s += c[k] * root_of_unity(n, static_cast<long long>(m) * static_cast<long long>(k));
        lambda[m] = s;
    }
    return lambda;
}

EigenPhases eigenvalues(const CirculantUnitary& u) {
    std::vector<double> gamma;
    gamma.reserve(u.size());
    for (const auto& l : spectrum(u)) gamma.push_back(std::arg(l));
    return EigenPhases(std::move(gamma));
}

std::vector<Complex> eigenvector(std::size_t n, std::size_t j) {
    if (n < 1 || j < 1 || j > n) {
        throw Error(ErrorCode::invalid_argument,
                    "eigenvector index " + std::to_string(j) + " outside 1.." + std::to_string(n));
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Complex> v(n);
    for (std::size_t p = 0; p < n; ++p)
        v[p] = norm * root_of_unity(n, static_cast<long long>(p) * static_cast<long long>(j));
    return v;
}

Matrix parity_operator(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "parity operator needs n >= 2");
    Matrix p(n);
    for (std::size_t i = 0; i < n; ++i) p(i, (n - i) % n) = 1.0;
    return p;
}

Matrix parity_gram(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "parity operator needs n >= 2");
    std::vector<std::vector<Complex>> phi;
    phi.reserve(n);
    for (std::size_t m = 0; m < n; ++m) phi.push_back(eigenvector(n, m == 0 ? n : m));
    // (x, y) is antilinear in x, so (conj(phi_a), phi_b) = sum_p phi_a[p] phi_b[p].
    Matrix theta(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Complex s{};
            for (std::size_t p = 0; p < n; ++p) s += phi[a][p] * phi[b][p];
            theta(a, b) = s;
        }
    return theta;
}

SymmetryReport symmetry_report(const CirculantUnitary& u) {
    constexpr double tol = 1e-10;
    const Matrix m = u.matrix();
    const Matrix mt = m.transpose();
    const Matrix p = parity_operator(u.size());

    SymmetryReport report;
    report.time_reversal = max_abs_diff(m, mt) < tol;
    report.pt_symmetric = max_abs_diff(mat_mul(mat_mul(p, m), p), mt) < tol;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (p(i, i) == Complex(1.0)) report.parity_fixed_edges.push_back(i + 1);
    return report;
}

DnrDecomposition dnr_decomposition(const CirculantUnitary& u, double tol) {
    if (!(tol > 0.0 && tol < 0.1)) throw Error(ErrorCode::invalid_argument, "DNR tolerance must lie in (0, 0.1)");
    DnrDecomposition d;
    d.tol = tol;
    for (const auto& l : spectrum(u)) {
        if (std::abs(l + 1.0) < tol)
            ++d.dirichlet;
        else if (std::abs(l - 1.0) < tol)
            ++d.neumann;
        else
            ++d.robin;
    }
    return d;
}

CirculantUnitary permutation_invariant(std::size_t n, Complex u, Complex v) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "permutation-invariant coupling needs n >= 2");
    const double nn = static_cast<double>(n);
    if (std::abs(std::abs(u) - 1.0) > kUnitarityTolerance || std::abs(std::abs(u + nn * v) - 1.0) > kUnitarityTolerance) {
        throw Error(ErrorCode::not_unitary, "permutation-invariant coupling needs |u| = 1 and |u + n v| = 1");
    }
    std::vector<Complex> row(n, v);
    row[0] = u + v;
    return CirculantUnitary::from_first_row(std::move(row));
}

CirculantUnitary shift_coupling(std::size_t n, Complex factor) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "shift coupling needs n >= 2");
    std::vector<Complex> row(n, Complex{});
    row[1] = factor;
    return CirculantUnitary::from_first_row(std::move(row));
}

CirculantUnitary delta_coupling(std::size_t n, double alpha) {
    if (!std::isfinite(alpha)) throw Error(ErrorCode::invalid_argument, "delta strength must be finite");
    return permutation_invariant(n, -1.0, 2.0 / Complex(static_cast<double>(n), alpha));
}

std::string to_json(const CirculantUnitary& u) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& z : u.first_row()) row.push_back({z.real(), z.imag()});
    nlohmann::json j;
    j["n"] = u.size();
    j["first_row"] = std::move(row);
    return j.dump();
}

CirculantUnitary circulant_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::invalid_argument, std::string("circulant JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("first_row") || !j["n"].is_number_integer() ||
        !j["first_row"].is_array()) {
        throw Error(ErrorCode::invalid_argument, "circulant JSON needs integer \"n\" and array \"first_row\"");
    }
    const auto n = j["n"].get<long long>();
    const auto& arr = j["first_row"];
    if (n < 2 || static_cast<std::size_t>(n) != arr.size()) {
        throw Error(ErrorCode::dimension_mismatch, "circulant JSON: \"n\" does not match first_row length");
    }
    std::vector<Complex> row;
    row.reserve(arr.size());
    for (const auto& e : arr) {
        if (e.is_number()) {
            row.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            row.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw Error(ErrorCode::invalid_argument, "circulant JSON: entries must be [re, im] pairs");
        }
    }
    return CirculantUnitary::from_first_row(std::move(row));
}

}  // namespace qgraph
