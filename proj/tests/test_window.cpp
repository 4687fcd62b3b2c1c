#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "bosegas/localization/window.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/potentials/potential.hpp"
#include "bosegas/scattering/scattering.hpp"

using bosegas::LocalizationKernel;
using bosegas::RadialGrid;
using bosegas::RadialPotential;
using bosegas::row_integral;
using bosegas::row_integral_scan;
using bosegas::sandwich_check;
using bosegas::ScatteringSolution;
using bosegas::scattering_solution;
using bosegas::WindowedPotential;
using bosegas::windowed_potential;

namespace {

const ScatteringSolution& well_solution() {
    static const ScatteringSolution sol =
        scattering_solution(RadialPotential::square_well(8.0, 1.0),
                            RadialGrid::uniform(0.0, 1.0, 401));
    return sol;
}

WindowedPotential well_window(double ell) {
    return windowed_potential(RadialPotential::square_well(8.0, 1.0), well_solution(),
                              LocalizationKernel(ell));
}

} // namespace

TEST_CASE("profiles obey the screening identities pointwise") {
    const auto wp = well_window(100.0);
    REQUIRE(wp.ratio == Catch::Approx(0.01));
    REQUIRE(wp.a == Catch::Approx(0.5179862099620915).epsilon(1e-8));

    for (std::size_t i = 0; i < wp.grid.size(); ++i) {
        const double r = wp.grid.nodes[i];
        const double om = wp.sol.omega_at(r);
        REQUIRE(wp.W1[i] == Catch::Approx(wp.W[i] * (1.0 - om)).margin(1e-14 * wp.W[i]));
        REQUIRE(wp.W2[i] == Catch::Approx(wp.W[i] * (1.0 - om * om)).margin(1e-14 * wp.W[i]));
        REQUIRE(wp.W2[i] >= wp.W1[i]);
        REQUIRE(wp.W1[i] >= 0.0);
        // the window never exceeds 1, so dividing by it only enlarges
        REQUIRE(wp.W[i] >= wp.sol.v(r));
    }
}

TEST_CASE("window table matches direct quadrature") {
    const auto wp = well_window(100.0);
    for (double r : {0.0, 0.123, 0.5, 0.777, 0.999, 1.0})
        REQUIRE(wp.window_at(r) == Catch::Approx(wp.window_direct(r)).epsilon(1e-12));
}

TEST_CASE("sandwich holds and its constant follows the square law") {
    const auto r04 = sandwich_check(well_window(25.0));  // R/ell = 0.04
    const auto r02 = sandwich_check(well_window(50.0));  // R/ell = 0.02
    const auto r01 = sandwich_check(well_window(100.0)); // R/ell = 0.01

    for (const auto& r : {r04, r02, r01}) {
        REQUIRE(r.holds);
        REQUIRE(r.min_rel >= 0.0); // lower half: W1 >= g exactly
        REQUIRE(r.max_rel > 0.0);
    }

    // fit C at R/ell = 0.02, then the 0.01 run must sit inside C (R/ell)^2
    const double C = r02.max_rel / (0.02 * 0.02);
    REQUIRE(r01.max_rel <= C * 1e-4 * 1.01);

    // two-point exponent fits across both halvings
    const double p_42 = std::log2(r04.max_rel / r02.max_rel);
    const double p_21 = std::log2(r02.max_rel / r01.max_rel);
    REQUIRE(p_42 == Catch::Approx(2.0).margin(0.2));
    REQUIRE(p_21 == Catch::Approx(2.0).margin(0.2));

    // the small-ratio limit of the constant is half the 1-d gradient energy:
    // 1/window - 1 -> (int chi1'^2 / 2) (r/ell)^2
    REQUIRE(r01.fitted_c == Catch::Approx(12.310436524927109 / 2.0).epsilon(5e-3));
}

TEST_CASE("window widens to no-op as ell grows") {
    const auto wp = well_window(1e8);
    const auto rep = sandwich_check(wp);
    REQUIRE(rep.holds);
    REQUIRE(rep.max_rel <= 1e-12);
    REQUIRE(wp.W1_integral() ==
            Catch::Approx(8.0 * M_PI * wp.a).epsilon(1e-7));
}

TEST_CASE("row integral peaks at the center and fits below the sup bound") {
    const auto wp = well_window(100.0);
    const auto rep = row_integral_scan(wp);

    REQUIRE(rep.argmax[0] == 0.0);
    REQUIRE(rep.argmax[1] == 0.0);
    REQUIRE(rep.argmax[2] == 0.0);

    // chi(0)^2 8 pi, the proof-side ceiling, with the (R/ell)^2 correction
    // at 0.01 buried well inside the 1% slack
    const double chi0 = wp.kernel.chi_sup();
    const double ceiling = chi0 * chi0 * 8.0 * M_PI;
    REQUIRE(rep.fitted_c <= ceiling * 1.01);
    REQUIRE(rep.fitted_c >= ceiling * 0.99);

    // off-center rows are strictly smaller, and outside the bump they vanish
    REQUIRE(row_integral(wp, {30.0, 0.0, 0.0}) < rep.max_value);
    REQUIRE(row_integral(wp, {51.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("transform is bounded by its zero mode") {
    const auto wp = well_window(100.0);
    const double w0 = wp.W1_hat(0.0);
    REQUIRE(w0 >= 8.0 * M_PI * wp.a);
    REQUIRE(w0 <= 8.0 * M_PI * wp.a * (1.0 + 7e-4));
    for (double k : {0.3, 1.0, 4.0, 17.0, 60.0, 200.0}) {
        const double wk = wp.W1_hat(k);
        REQUIRE(std::fabs(wk) <= w0);
    }
}

TEST_CASE("out-of-range and mismatched inputs are rejected") {
    // R/ell = 1 far exceeds the admissible D  of about 0.353
    REQUIRE_THROWS_AS(well_window(1.0), bosegas::RangeTooLarge);
    // just inside the boundary still constructs
    REQUIRE_NOTHROW(well_window(1.0 / 0.35));
    // potential passed alongside a solution for a different range
    REQUIRE_THROWS_AS(windowed_potential(RadialPotential::square_well(8.0, 0.9),
                                         well_solution(), LocalizationKernel(100.0)),
                      bosegas::Error);
}
