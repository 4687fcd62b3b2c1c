#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "bosegas/numerics/grid.hpp"
#include "bosegas/numerics/quadrature.hpp"

using bosegas::integrate_adaptive;
using bosegas::Tolerance;

namespace {

const double inf = std::numeric_limits<double>::infinity();

// Integrand of the dispersion-relation integral whose closed form is
// 8*sqrt(2)/15. Written naively as (sqrt(t^4+2t^2) - t^2 - 1 + 1/(2t^2))*t^2
// the bracket loses all significant digits for t beyond ~1e3, so the tail
// uses the rationalized equivalent (4t^2-1) / (2t^2 (S+t^2+1)(S+t^2-1))
// with S = sqrt(t^4+2t^2).
double dispersion_integrand(double t) {
    const double t2 = t * t;
    const double S = std::sqrt(t2 * (t2 + 2.0));
    if (t <= 2.0)
        return (S - t2 - 1.0 + 1.0 / (2.0 * t2)) * t2;
    const double bracket = (4.0 * t2 - 1.0) / (2.0 * t2 * (S + t2 + 1.0) * (S + t2 - 1.0));
    return bracket * t2;
}

} // namespace

TEST_CASE("constant integrand integrates exactly") {
    auto r = integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0);
    REQUIRE(r.value == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exponential tail on the half line") {
    auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, inf, {}, {}, 8.0);
    REQUIRE(std::fabs(r.value - 1.0) <= std::max(1e-12, 1e-9 * 1.0));
    REQUIRE(r.error < 1e-8);
}

TEST_CASE("gaussian on the half line") {
    auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, 0.0, inf, {}, {}, 8.0);
    REQUIRE(r.value == Catch::Approx(0.8862269254527580).epsilon(1e-10));
}

TEST_CASE("dispersion integral matches 8 sqrt(2) / 15") {
    const double expected = 0.7542472332656507; // 8*sqrt(2)/15

    Tolerance tight;
    tight.rel = 1e-10;
    auto r = integrate_adaptive(dispersion_integrand, 0.0, inf, tight, {}, 2.0);
    REQUIRE(std::fabs(r.value - expected) < 1e-9);

    // Cross-check at a second refinement depth: coarser tolerance must agree
    // with the tight run well inside its own reported error.
    Tolerance coarse;
    coarse.rel = 1e-7;
    auto r2 = integrate_adaptive(dispersion_integrand, 0.0, inf, coarse, {}, 2.0);
    REQUIRE(std::fabs(r2.value - r.value) <= std::max(coarse.abs, coarse.rel * std::fabs(r.value)));
}

TEST_CASE("quadrature is linear in the integrand") {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    auto f = [](double x) { return std::sin(x); };
    auto g = [](double x) { return std::exp(x); };
    const double If = integrate_adaptive(f, 0.0, 2.0).value;
    const double Ig = integrate_adaptive(g, 0.0, 2.0).value;
    REQUIRE(If == Catch::Approx(1.0 - std::cos(2.0)).epsilon(1e-12));
    REQUIRE(Ig == Catch::Approx(std::exp(2.0) - 1.0).epsilon(1e-12));
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = coef(rng), beta = coef(rng);
        auto combo = [&](double x) { return alpha * f(x) + beta * g(x); };
        const double Ic = integrate_adaptive(combo, 0.0, 2.0).value;
        REQUIRE(std::fabs(Ic - (alpha * If + beta * Ig)) < 1e-9 * (1.0 + std::fabs(Ic)));
    }
}

TEST_CASE("breakpoints let kinked integrands converge fast") {
    auto f = [](double x) { return std::fabs(x - 1.0 / 3.0); };
    auto r = integrate_adaptive(f, 0.0, 1.0, {}, {1.0 / 3.0});
    REQUIRE(r.value == Catch::Approx(5.0 / 18.0).epsilon(1e-12));
}

TEST_CASE("interval validation") {
    auto f = [](double) { return 1.0; };
    REQUIRE_THROWS_AS(integrate_adaptive(f, 1.0, 1.0), bosegas::InvalidInterval);
    REQUIRE_THROWS_AS(integrate_adaptive(f, 2.0, 1.0), bosegas::InvalidInterval);
    REQUIRE_THROWS_AS(integrate_adaptive(f, std::nan(""), 1.0), bosegas::InvalidInterval);
    REQUIRE_THROWS_AS(integrate_adaptive(f, -inf, 1.0), bosegas::InvalidInterval);
}

TEST_CASE("budget exhaustion reports NonConvergent") {
    Tolerance tiny;
    tiny.max_refinements = 2;
    tiny.rel = 1e-14;
    tiny.abs = 0.0;
    auto spike = [](double x) { return 1.0 / std::sqrt(std::fabs(x - 0.3) + 1e-300); };
    REQUIRE_THROWS_AS(integrate_adaptive(spike, 0.0, 1.0, tiny), bosegas::NonConvergent);
}

TEST_CASE("tolerance field validation") {
    Tolerance bad;
    bad.rel = 0.0;
    auto f = [](double) { return 1.0; };
    REQUIRE_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, bad), bosegas::Error);
    bad = Tolerance{};
    bad.max_refinements = 0;
    REQUIRE_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, bad), bosegas::Error);
}

TEST_CASE("radial grid invariants") {
    REQUIRE_NOTHROW(bosegas::RadialGrid({0.0, 0.5, 1.0}));
    REQUIRE_THROWS_AS(bosegas::RadialGrid({0.0}), bosegas::Error);
    REQUIRE_THROWS_AS(bosegas::RadialGrid({-0.1, 0.5}), bosegas::Error);
    REQUIRE_THROWS_AS(bosegas::RadialGrid({0.0, 0.5, 0.5}), bosegas::Error);

    auto u = bosegas::RadialGrid::uniform(0.0, 2.0, 5);
    REQUIRE(u.size() == 5);
    REQUIRE(u.back() == 2.0);

    auto g = bosegas::RadialGrid::geometric(1e-6, 1.0, 40);
    REQUIRE(g.front() == 0.0);
    REQUIRE(g.nodes[1] == Catch::Approx(1e-6));
    REQUIRE(g.back() == 1.0);
}
