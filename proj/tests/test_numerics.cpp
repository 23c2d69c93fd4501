#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qgraph/numerics.hpp"

using namespace qgraph;

namespace {

Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
    Eigen::MatrixXcd e(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
    return e;
}

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("identity and arithmetic") {
        const Matrix id = Matrix::identity(3);
        CHECK(id(0, 0) == Complex(1.0));
        CHECK(id(0, 1) == Complex(0.0));
        Matrix a(2, {Complex(1, 2), Complex(3, 0), Complex(0, -1), Complex(4, 4)});
        CHECK(a.transpose()(0, 1) == Complex(0, -1));
        CHECK(a.adjoint()(0, 1) == Complex(0, 1));
        CHECK(a.max_abs() == doctest::Approx(std::sqrt(32.0)));
        CHECK(max_abs_diff(a + a, Complex(2.0) * a) == 0.0);
        CHECK(max_abs_diff(mat_mul(a, Matrix::identity(2)), a) == 0.0);
    }

    TEST_CASE("constructor rejects wrong entry count") {
        CHECK_THROWS_AS(Matrix(2, std::vector<Complex>(3)), Error);
    }

    TEST_CASE("solve_linear agrees with an LU oracle") {
        std::mt19937_64 rng(11);
        for (std::size_t n : {1u, 2u, 5u, 9u}) {
            const Matrix a = random_matrix(n, rng);
            const Matrix b = random_matrix(n, rng);
            const Matrix x = solve_linear(a, b);
            const Eigen::MatrixXcd ref = to_eigen(a).partialPivLu().solve(to_eigen(b));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(x(i, j) - ref(i, j)) < 1e-10);
        }
    }

    TEST_CASE("determinant agrees with an LU oracle") {
        std::mt19937_64 rng(12);
        for (std::size_t n : {1u, 3u, 4u, 7u}) {
            const Matrix a = random_matrix(n, rng);
            const Complex ref = to_eigen(a).determinant();
            CHECK(std::abs(determinant(a) - ref) < 1e-10 * std::abs(ref));
        }
        Matrix singular(2, {Complex(1), Complex(2), Complex(2), Complex(4)});
        CHECK(std::abs(determinant(singular)) < 1e-15);
    }

    TEST_CASE("singular system is rejected") {
        Matrix singular(2, {Complex(1), Complex(2), Complex(2), Complex(4)});
        try {
            (void)solve_linear(singular, Matrix::identity(2));
            FAIL("expected singular_matrix");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::singular_matrix);
        }
    }

    TEST_CASE("unitarity residual") {
        Matrix rot(2, {Complex(std::cos(0.4)), Complex(-std::sin(0.4)), Complex(std::sin(0.4)), Complex(std::cos(0.4))});
        CHECK(unitarity_residual(rot) < 1e-15);
        CHECK(unitarity_residual(Complex(2.0) * rot) == doctest::Approx(3.0));
    }

    TEST_CASE("find_roots locates every sign change") {
        const auto roots = find_roots([](double x) { return std::sin(x); }, 0.5, 10.0, 200, 1e-14);
        REQUIRE(roots.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(roots[i] == doctest::Approx(kPi * (i + 1)).epsilon(1e-13));
    }

    TEST_CASE("find_roots reports zeros on grid nodes once") {
        const auto roots = find_roots([](double x) { return x - 1.0; }, 0.0, 2.0, 4, 1e-14);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == 1.0);
    }

    TEST_CASE("find_roots argument checks") {
        CHECK_THROWS_AS(find_roots([](double x) { return x; }, 1.0, 0.0, 10, 1e-12), Error);
        CHECK_THROWS_AS(find_roots([](double x) { return x; }, 0.0, 1.0, 1, 1e-12), Error);
    }

    TEST_CASE("bisect") {
        const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15);
        CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
}
