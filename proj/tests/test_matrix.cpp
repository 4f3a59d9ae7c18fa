#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linmod/matrix.hpp"
#include "test_support.hpp"

using linmod::Matrix;

TEST_CASE("construction and basic ops") {
    Matrix m{{1, 2}, {3, 4}};
    CHECK(m.rows() == 2);
    CHECK(m(1, 0) == 3);
    CHECK(m.trace() == doctest::Approx(5.0));
    CHECK(m.transpose()(0, 1) == 3);
    CHECK_THROWS_AS(Matrix(0, 3), std::invalid_argument);
    CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("identity and diagonal factories") {
    const Matrix i3 = Matrix::identity(3);
    CHECK(i3.trace() == doctest::Approx(3.0));
    const Matrix d = Matrix::diagonal({2.0, 5.0});
    CHECK(d(1, 1) == 5.0);
    CHECK(d(0, 1) == 0.0);
}

TEST_CASE("matmul against hand values") {
    Matrix a{{1, 2}, {3, 4}};
    Matrix b{{5, 6}, {7, 8}};
    const Matrix c = a * b;
    CHECK(c(0, 0) == doctest::Approx(19));
    CHECK(c(1, 1) == doctest::Approx(50));
}

TEST_CASE("parallel matmul matches serial reference") {
    std::mt19937_64 rng(7);
    for (auto [r, k, c] : {std::tuple{3, 4, 5}, std::tuple{70, 80, 70}}) {
        const Matrix a = testsup::random_matrix(rng, r, k);
        const Matrix b = testsup::random_matrix(rng, k, c);
        const Matrix diff = linmod::matmul(a, b) - linmod::matmul_serial(a, b);
        CHECK(diff.max_abs() < 1e-12);
    }
}

TEST_CASE("hcat and dot") {
    const Matrix a = Matrix::ones(2);
    const Matrix h = Matrix::hcat(a, Matrix::identity(2));
    CHECK(h.cols() == 3);
    CHECK(h(0, 1) == 1.0);
    CHECK(linmod::dot(Matrix::column({1, 2, 3}), Matrix::column({4, 5, 6})) ==
          doctest::Approx(32.0));
    CHECK_THROWS(linmod::dot(Matrix::ones(2), Matrix::ones(3)));
}
