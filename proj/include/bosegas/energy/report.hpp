#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/scattering/fourier.hpp"
#include "bosegas/scattering/scattering.hpp"

namespace bosegas {

// One itemized error term of an energy bound: the computed value together
// with a human-readable origin and the scaling law it is expected to follow.
struct BudgetEntry {
    std::string label;
    double value;
    std::string law;
};

// Assembled energy-per-volume statement. The exact pieces (leading,
// quadratic_gap) sit next to the itemized allowances; total is always
// produced as leading + quadratic_gap + sum(budget), so budget completeness
// holds to machine precision by construction.
struct EnergyReport {
    double leading = 0.0;       // -4 pi a rho_mu^2, or +4 pi a rho^2 on the comparison side
    double quadratic_gap = 0.0; // (1/4) (rho - rho_mu)^2 g_hat(0)
    double lhy_term = 0.0;      // computed second-order correction per volume
    std::vector<BudgetEntry> budget;
    std::map<std::string, double> constants_used;
    double total = 0.0;

    double budget_sum() const {
        double s = 0.0;
        for (const auto& e : budget)
            s += e.value;
        return s;
    }
};

// Condensate self-energy scalar over a box of volume ell^3:
//   n0(n0-1)/(2 ell^3) (g_hat(0) + g_omega_hat(0))
//     - (rho_mu n0/ell^3 + 1/4 (rho_mu - (n0+1)/ell^3)^2) ell^3 g_hat(0)
// The second parenthesis prices the mismatch between the box density and
// the reference density scale rho_mu.
inline double a0_scalar(double n0, double rho_mu, double ell, double g_hat0,
                        double g_omega_hat0) {
    if (!(n0 >= 0.0) || !(ell > 0.0))
        throw Error("a0_scalar: need n0 >= 0 and ell > 0");
    const double vol = ell * ell * ell;
    const double pair_count = n0 * (n0 - 1.0) / (2.0 * vol);
    const double mismatch = rho_mu - (n0 + 1.0) / vol;
    const double penalty = rho_mu * n0 / vol + 0.25 * mismatch * mismatch;
    return pair_count * (g_hat0 + g_omega_hat0) - penalty * vol * g_hat0;
}

// Second-order (one-loop) correction per volume for the physical dispersion
// k^2, evaluated with the potential's own transform:
//   (1/2) (2 pi)^-3 int [ sqrt(k^4 + 2 k^2 x) - k^2 - x + x^2/(2 k^2) ] d^3k,
//   x = rho g_hat(k).
// Rationalized: with z = sqrt(k^2 + 2x) the radial integrand (k^2 absorbed)
// is x^3 (z + 3k) / (2 (z + k) (k (z + k) + x)), positive and finite at
// k = 0 where it equals x^2/2. Integrable tail ~ x^3/(2k^2) ~ k^-8, so a
// cutoff at kR = 60 is already far beyond the last digit.
inline double bogoliubov_correction_per_volume(const ScatteringSolution& sol, double rho) {
    if (!(rho >= 0.0))
        throw InvalidCoefficients("bogoliubov_correction_per_volume: rho must be >= 0");
    if (rho == 0.0 || sol.R <= 0.0)
        return 0.0;
    const auto ghat = fourier_profile(sol, Profile::g);
    // valid for either sign of x as long as the dispersion stays open
    // (k^2 + 2x > 0); x < 0 only occurs on transform lobes where |x| << k^2
    auto density = [&](double k) {
        const double x = rho * ghat(k);
        const double s2 = k * k + 2.0 * x;
        if (s2 <= 0.0)
            throw InvalidCoefficients(
                "bogoliubov_correction_per_volume: dispersion closed, rho too large");
        const double z = std::sqrt(s2);
        return x * x * x * (z + 3.0 * k) / (2.0 * (z + k) * (k * (z + k) + x));
    };
    // the sqrt turns over at k ~ sqrt(2 rho g_hat(0)); seed that scale plus
    // the transform's oscillation seams
    const double x0 = rho * ghat.value_at_zero;
    std::vector<double> brk;
    for (double f : {0.5, 1.0, 2.0, 4.0, 16.0})
        brk.push_back(f * std::sqrt(2.0 * x0));
    if (sol.R > 0.0)
        for (double k = M_PI / sol.R; k < 60.0 / sol.R; k += M_PI / sol.R)
            brk.push_back(k);
    Tolerance tol;
    tol.rel = 1e-8;
    tol.abs = 0.0;
    return integrate_adaptive(density, 0.0, 60.0 / sol.R, tol, brk).value /
           (4.0 * M_PI * M_PI);
}

} // namespace bosegas
