#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bosegas/numerics/quadratic_form.hpp"

using bosegas::assemble_scattering_form;
using bosegas::minimize_quadratic_form;
using bosegas::RadialGrid;
using bosegas::RadialPotential;

namespace {

// mesh on [0, rtilde] with every potential breakpoint included
RadialGrid make_mesh(const RadialPotential& v, double rtilde, std::size_t n) {
    std::vector<double> nodes = RadialGrid::uniform(0.0, rtilde, n).nodes;
    for (double b : v.breakpoints())
        if (b > 0.0 && b < rtilde)
            nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return RadialGrid(nodes);
}

double minimize(const RadialPotential& v, double rtilde, std::size_t n) {
    return minimize_quadratic_form(assemble_scattering_form(v, make_mesh(v, rtilde, n)));
}

} // namespace

TEST_CASE("zero potential minimizes to zero with the constant profile") {
    for (double rtilde : {1.0, 2.0, 5.0})
        REQUIRE(minimize(RadialPotential::zero(), rtilde, 101) ==
                Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("hard core unit radius against rtilde = 2 gives 8 pi") {
    const double expected = 8.0 * M_PI;
    const double got = minimize(RadialPotential::hard_core(1.0), 2.0, 4001);
    REQUIRE(got == Catch::Approx(expected).epsilon(1e-5));
    REQUIRE(got >= expected); // discrete minimum approaches from above
}

TEST_CASE("square well matches the closed-form scattering length") {
    // a = 1 - tanh(2)/2 for V0 = 8, R = 1; minimum is 4 pi a / (1 - a/rtilde)
    const double a = 1.0 - std::tanh(2.0) / 2.0;
    const double rtilde = 2.0;
    const double expected = 4.0 * M_PI * a / (1.0 - a / rtilde);
    const double got = minimize(RadialPotential::square_well(8.0, 1.0), rtilde, 4001);
    REQUIRE(got == Catch::Approx(expected).epsilon(1e-5));
    REQUIRE(got >= expected);
}

TEST_CASE("refinement is monotone from above and Richardson-consistent") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    const double rtilde = 2.0;
    const double e1 = minimize(v, rtilde, 251);
    const double e2 = minimize(v, rtilde, 501);
    const double e4 = minimize(v, rtilde, 1001);
    REQUIRE(e1 >= e2);
    REQUIRE(e2 >= e4);
    // P1 energies converge O(h^2); eliminate the leading term
    const double extrapolated = e4 + (e4 - e2) / 3.0;
    const double a = 1.0 - std::tanh(2.0) / 2.0;
    const double expected = 4.0 * M_PI * a / (1.0 - a / rtilde);
    REQUIRE(extrapolated == Catch::Approx(expected).epsilon(1e-6));
}

TEST_CASE("hard core requires the core edge on the mesh") {
    auto v = RadialPotential::hard_core(0.77);
    auto mesh = RadialGrid::uniform(0.0, 2.0, 100); // 0.77 not a node
    REQUIRE_THROWS_AS(assemble_scattering_form(v, mesh), bosegas::Error);
}

TEST_CASE("nonpositive pivots are flagged as singular") {
    bosegas::QuadraticForm form;
    form.mesh = RadialGrid::uniform(0.0, 1.0, 3);
    form.diag = {-1.0, -1.0, 1.0};
    form.off = {0.5, 0.5};
    form.elements = {{-0.5, -1.5, 1.0, -0.5}, {-0.5, 0.0, 1.0, 1.5}};
    REQUIRE_THROWS_AS(minimize_quadratic_form(form), bosegas::SingularSystem);
}
