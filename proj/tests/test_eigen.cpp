#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bosegas/numerics/eigen.hpp"

using bosegas::min_eigen_sym;
using bosegas::SymMatrix;

TEST_CASE("identity matrix") {
    SymMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        m(i, i) = 1.0;
    auto e = min_eigen_sym(m);
    REQUIRE(e.value == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("diagonal matrix picks the smallest entry") {
    SymMatrix m(3);
    m(0, 0) = 3.0;
    m(1, 1) = -1.0;
    m(2, 2) = 2.0;
    auto e = min_eigen_sym(m);
    REQUIRE(e.value == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(std::fabs(e.vector[1]) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("two by two exchange matrix") {
    SymMatrix m(2);
    m(0, 1) = m(1, 0) = 1.0;
    auto e = min_eigen_sym(m);
    REQUIRE(e.value == Catch::Approx(-1.0).margin(1e-13));
}

TEST_CASE("asymmetry is rejected") {
    SymMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0 + 1e-6;
    REQUIRE_THROWS_AS(min_eigen_sym(m), bosegas::NotSymmetric);
}

TEST_CASE("lowest eigenvalue is below every Rayleigh quotient") {
    std::mt19937 rng(777u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 60;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m(i, j) = m(j, i) = gauss(rng);
    auto e = min_eigen_sym(m);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(n);
        for (auto& xi : x)
            xi = gauss(rng);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double mx = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                mx += m(i, j) * x[j];
            num += x[i] * mx;
            den += x[i] * x[i];
        }
        REQUIRE(e.value <= num / den + 1e-10);
    }
}

TEST_CASE("residual satisfies the advertised bound") {
    std::mt19937 rng(778u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 200;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m(i, j) = m(j, i) = gauss(rng);
    auto e = min_eigen_sym(m); // throws if the residual bound fails
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mx = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            mx += m(i, j) * e.vector[j];
        rnorm += (mx - e.value * e.vector[i]) * (mx - e.value * e.vector[i]);
    }
    REQUIRE(std::sqrt(rnorm) <= 1e-10 * m.frobenius());
}
