#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bosegas/numerics/ode.hpp"

using bosegas::RadialGrid;
using bosegas::RadialPotential;
using bosegas::solve_radial_ode;
using bosegas::Tolerance;

namespace {

Tolerance loose(double rel) {
    Tolerance t;
    t.rel = rel;
    return t;
}

} // namespace

TEST_CASE("free equation gives u(r) = r exactly") {
    auto grid = RadialGrid::uniform(0.0, 2.0, 21);
    auto sol = solve_radial_ode(RadialPotential::zero(), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(sol.u[i] == Catch::Approx(grid.nodes[i]).margin(1e-15));
        REQUIRE(sol.du[i] == Catch::Approx(1.0).margin(1e-15));
        REQUIRE(sol.ln_scale[i] == 0.0);
    }
}

TEST_CASE("square well reproduces sinh(2r)/2") {
    // u'' = 4u inside the well of height 8, so u = sinh(2r)/2 there.
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto grid = RadialGrid::uniform(0.0, 2.0, 401);
    auto sol = solve_radial_ode(v, grid, loose(1e-8));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        if (r > 1.0)
            break;
        REQUIRE(sol.u[i] == Catch::Approx(std::sinh(2.0 * r) / 2.0).margin(1e-9));
    }
    const std::size_t mid = 200; // node at r = 1
    REQUIRE(grid.nodes[mid] == 1.0);
    REQUIRE(sol.u[mid] == Catch::Approx(1.8134302039235093).epsilon(1e-9));
    REQUIRE(sol.du[mid] == Catch::Approx(3.7621956910836314).epsilon(1e-9));
}

TEST_CASE("solution is affine beyond the range") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto grid = RadialGrid::uniform(0.0, 2.0, 401);
    auto sol = solve_radial_ode(v, grid, loose(1e-8));
    const std::size_t mid = 200, last = 400;
    REQUIRE(sol.du[last] == Catch::Approx(sol.du[mid]).epsilon(1e-12));
    REQUIRE(sol.u[last] == Catch::Approx(sol.u[mid] + sol.du[mid] * 1.0).epsilon(1e-12));
    // log-derivative at the back gives r - a with a = 1 - tanh(2)/2
    const double a = 2.0 - sol.log_derivative_tail();
    REQUIRE(a == Catch::Approx(0.5179862099620915).epsilon(1e-9));
}

TEST_CASE("positive increasing inside the support for v >= 0") {
    auto v = RadialPotential::piecewise_constant({0.0, 0.4, 1.0}, {5.0, 1.0});
    auto grid = RadialGrid::uniform(0.0, 1.0, 201);
    auto sol = solve_radial_ode(v, grid, loose(1e-7));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        REQUIRE(sol.u[i] > 0.0);
        REQUIRE(sol.u[i] > sol.u[i - 1]);
    }
}

TEST_CASE("halving the grid moves the tail ratio by less than the estimate") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto coarse_grid = RadialGrid::uniform(0.0, 2.0, 101);
    auto fine_grid = RadialGrid::uniform(0.0, 2.0, 201);
    auto c = solve_radial_ode(v, coarse_grid, loose(1e-5));
    auto f = solve_radial_ode(v, fine_grid, loose(1e-6));
    REQUIRE(std::fabs(c.log_derivative_tail() - f.log_derivative_tail()) <= c.error);
}

TEST_CASE("too coarse a grid is reported") {
    auto v = RadialPotential::square_well(5000.0, 1.0);
    auto grid = RadialGrid::uniform(0.0, 2.0, 11);
    REQUIRE_THROWS_AS(solve_radial_ode(v, grid), bosegas::StepTooCoarse);
}

TEST_CASE("dense evaluation interpolates between nodes") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto grid = RadialGrid::uniform(0.0, 2.0, 401);
    auto sol = solve_radial_ode(v, grid, loose(1e-8));
    for (double r : {0.1234, 0.5678, 0.7301, 0.9999})
        REQUIRE(sol.eval(r) == Catch::Approx(std::sinh(2.0 * r) / 2.0).epsilon(1e-8));
    // beyond the range the continuation is a straight line
    REQUIRE(sol.eval(1.75) == Catch::Approx(sol.u[300] + sol.du[300] * 0.25).epsilon(1e-12));
}

TEST_CASE("deep wells renormalize instead of overflowing") {
    // kappa = sqrt(V0/2) = 1000; u ~ exp(1000 r) dwarfs double range but the
    // log-derivative tanh(kappa)/kappa stays representable.
    auto v = RadialPotential::square_well(2e6, 1.0);
    auto grid = RadialGrid::uniform(0.0, 1.0, 4001);
    auto sol = solve_radial_ode(v, grid, loose(1e-4));
    REQUIRE(std::isfinite(sol.u.back()));
    REQUIRE(sol.ln_scale.back() > 500.0);
    REQUIRE(sol.log_derivative_tail() == Catch::Approx(1e-3).epsilon(1e-6));
}
