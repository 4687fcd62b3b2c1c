#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bosegas/scattering/fourier.hpp"
#include "bosegas/scattering/scattering.hpp"

using bosegas::fourier;
using bosegas::Profile;
using bosegas::RadialGrid;
using bosegas::RadialPotential;
using bosegas::scattering_length_ode;
using bosegas::scattering_length_variational;
using bosegas::scattering_solution;

namespace {

// closed form for the square well: a = R (1 - tanh(kR)/(kR)), k = sqrt(V0/2)
double well_length(double v0, double R) {
    const double k = std::sqrt(v0 / 2.0);
    return R * (1.0 - std::tanh(k * R) / (k * R));
}

} // namespace

TEST_CASE("ode route: hard core, zero, square well") {
    REQUIRE(scattering_length_ode(RadialPotential::hard_core(1.0)) == 1.0);
    REQUIRE(scattering_length_ode(RadialPotential::zero()) == 0.0);
    const double a = scattering_length_ode(RadialPotential::square_well(8.0, 1.0));
    REQUIRE(a == Catch::Approx(0.5179862099620915).epsilon(1e-9));
}

TEST_CASE("variational route: hard core independent of rtilde") {
    auto v = RadialPotential::hard_core(1.0);
    const double a2 = scattering_length_variational(v, 2.0);
    const double a4 = scattering_length_variational(v, 4.0);
    REQUIRE(a2 == Catch::Approx(1.0).epsilon(1e-6));
    REQUIRE(a4 == Catch::Approx(1.0).epsilon(1e-6));
    REQUIRE(a2 == Catch::Approx(a4).epsilon(1e-6));
}

TEST_CASE("variational route: zero potential and square well") {
    REQUIRE(scattering_length_variational(RadialPotential::zero(), 1.0) ==
            Catch::Approx(0.0).margin(1e-10));
    const double a = scattering_length_variational(RadialPotential::square_well(8.0, 1.0), 2.0);
    REQUIRE(a == Catch::Approx(0.5179862099620915).epsilon(1e-6));
}

TEST_CASE("the two routes agree on random potentials") {
    std::mt19937 rng(1234u);
    std::uniform_real_distribution<double> v0d(2.0, 30.0), rd(0.3, 2.0), f(1.5, 3.0);
    std::uniform_int_distribution<int> pieces(1, 4), coin(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        RadialPotential v = RadialPotential::zero();
        if (coin(rng) == 0) {
            v = RadialPotential::square_well(v0d(rng), rd(rng));
        } else {
            const int k = pieces(rng);
            std::vector<double> bp{0.0}, vals;
            for (int i = 0; i < k; ++i) {
                bp.push_back(bp.back() + rd(rng) / k);
                vals.push_back(v0d(rng));
            }
            v = RadialPotential::piecewise_constant(bp, vals);
        }
        const double a_ode = scattering_length_ode(v);
        const double a_var = scattering_length_variational(v, f(rng) * v.range());
        REQUIRE(std::fabs(a_ode - a_var) <= 1e-6 * a_ode);
    }
}

TEST_CASE("scattering solution for the square well") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto grid = RadialGrid::uniform(0.0, 2.0, 2001);
    auto sol = scattering_solution(v, grid);
    const double a = 0.5179862099620915;

    REQUIRE(sol.a == Catch::Approx(a).epsilon(1e-9));
    REQUIRE(sol.omega.back() == Catch::Approx(a / 2.0).epsilon(1e-9));

    SECTION("omega bounds and monotonicity") {
        for (std::size_t i = 0; i < sol.omega.size(); ++i) {
            REQUIRE(sol.omega[i] >= -1e-12);
            REQUIRE(sol.omega[i] <= 1.0 + 1e-12);
            if (i > 0)
                REQUIRE(sol.omega[i] <= sol.omega[i - 1] + 1e-12);
        }
    }

    SECTION("exterior law on grid points past the range") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (grid.nodes[i] >= sol.R)
                REQUIRE(std::fabs(sol.omega[i] * grid.nodes[i] - sol.a) <= 1e-8 * sol.a);
        // nontrivial seam: the integrated profile itself is affine out there
        const double r = 1.5;
        const double w_from_u = 1.0 - sol.u.eval(r) / (sol.c * r);
        REQUIRE(w_from_u == Catch::Approx(sol.a / r).epsilon(1e-9));
    }

    SECTION("g identity and integral") {
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(sol.g[i] == Catch::Approx(v(grid.nodes[i]) * (1.0 - sol.omega[i]))
                                    .margin(1e-12));
        const double ghat0 = fourier(sol, Profile::g, 0.0);
        REQUIRE(ghat0 == Catch::Approx(8.0 * M_PI * sol.a).epsilon(1e-6));
        REQUIRE(sol.a <= sol.R);
        REQUIRE(sol.a <= bosegas::l1_norm(v).value / (8.0 * M_PI));
        REQUIRE(sol.g_omega_integral >= 0.0);
        REQUIRE(sol.g_omega_integral <= ghat0);
    }
}

TEST_CASE("scattering solution trivial and unsupported cases") {
    auto grid = RadialGrid::uniform(0.0, 1.0, 11);
    auto sol = scattering_solution(RadialPotential::zero(), grid);
    for (double w : sol.omega)
        REQUIRE(w == 0.0);
    for (double gg : sol.g)
        REQUIRE(gg == 0.0);
    REQUIRE(sol.a == 0.0);

    REQUIRE_THROWS_AS(scattering_solution(RadialPotential::hard_core(1.0), grid),
                      bosegas::HardCoreUnsupported);
}

TEST_CASE("fourier transform of g and the omega identity") {
    auto v = RadialPotential::square_well(8.0, 1.0);
    auto sol = scattering_solution(v, RadialGrid::uniform(0.0, 2.0, 2001));
    const double ghat0 = fourier(sol, Profile::g, 0.0);

    // |g_hat| <= g_hat(0) for g >= 0
    for (double k : {0.5, 1.0, 3.0, 10.0, 60.0})
        REQUIRE(std::fabs(fourier(sol, Profile::g, k)) <= ghat0 * (1.0 + 1e-12));

    // omega_hat(k) * 2k^2 = g_hat(k) on a log grid spanning both limits
    for (int i = 0; i < 32; ++i) {
        const double k = 1e-2 / sol.R * std::pow(1e4, i / 31.0);
        const double lhs = fourier(sol, Profile::omega, k) * 2.0 * k * k;
        const double rhs = fourier(sol, Profile::g, k);
        REQUIRE(std::fabs(lhs - rhs) <= 1e-6 * ghat0);
    }

    // zero mode of g*omega lies between 0 and g_hat(0)
    const double gw0 = fourier(sol, Profile::g_omega, 0.0);
    REQUIRE(gw0 >= 0.0);
    REQUIRE(gw0 <= ghat0);
    REQUIRE(gw0 == Catch::Approx(sol.g_omega_integral).epsilon(1e-9));
}

TEST_CASE("truncation limit walks up to the hard core answer") {
    auto v = RadialPotential::hard_core(1.0);
    auto seq = bosegas::truncation_limit(v, {8.0, 128.0});
    REQUIRE(seq[0] == Catch::Approx(well_length(8.0, 1.0)).epsilon(1e-9));
    REQUIRE(seq[1] == Catch::Approx(well_length(128.0, 1.0)).epsilon(1e-9));
    REQUIRE(seq[0] < seq[1]);
    REQUIRE(seq[1] < 1.0);

    auto flat = bosegas::truncation_limit(RadialPotential::square_well(8.0, 1.0), {8.0, 16.0});
    REQUIRE(flat[0] == Catch::Approx(flat[1]).epsilon(1e-9));
    REQUIRE(flat[0] == Catch::Approx(well_length(8.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("monotonicity in the potential") {
    auto weak = RadialPotential::square_well(4.0, 1.0);
    auto strong = RadialPotential::square_well(8.0, 1.0);
    REQUIRE(scattering_length_ode(strong) >= scattering_length_ode(weak));

    auto grid = RadialGrid::uniform(0.0, 2.0, 501);
    auto sw = scattering_solution(weak, grid);
    auto ss = scattering_solution(strong, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        REQUIRE(ss.omega[i] >= sw.omega[i] - 1e-10);
}

TEST_CASE("additivity of the scattering length under range splits") {
    auto v = RadialPotential::piecewise_constant({0.0, 1.0, 2.0}, {8.0, 2.0});

    auto rep = bosegas::additivity_check(v, 1.0);
    REQUIRE(rep.holds);
    REQUIRE(std::max(rep.a_leq, rep.a_gt) <= rep.a_full + 1e-10);
    REQUIRE(rep.a_full <= rep.a_leq + rep.a_gt + 1e-10);

    auto at_range = bosegas::additivity_check(v, v.range());
    REQUIRE(at_range.holds);
    REQUIRE(at_range.a_gt == 0.0);
    REQUIRE(at_range.a_leq == Catch::Approx(at_range.a_full).epsilon(1e-8));

    auto at_zero = bosegas::additivity_check(v, 0.0);
    REQUIRE(at_zero.holds);
    REQUIRE(at_zero.a_leq == 0.0);
    REQUIRE(at_zero.a_gt == Catch::Approx(at_zero.a_full).epsilon(1e-8));
}
