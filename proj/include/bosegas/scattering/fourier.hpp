#pragma once

#include <cmath>
#include <functional>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/scattering/scattering.hpp"

namespace bosegas {

// Radial Fourier transform, convention f_hat(k) = int f(x) exp(-ik.x) dx =
// (4 pi / k) int_0^inf r f(r) sin(kr) dr, with the k = 0 limit 4 pi int f r^2 dr.
struct FourierProfile {
    std::function<double(double)> eval; // k > 0
    double value_at_zero = 0.0;

    double operator()(double k) const {
        if (k < 0.0)
            throw Error("FourierProfile: negative wavenumber");
        return k == 0.0 ? value_at_zero : eval(k);
    }
};

enum class Profile {
    g,       // g = v (1 - omega), compact support
    g_omega, // g * omega, compact support
    omega,   // scattering solution; a/r tail transformed in closed form
};

inline FourierProfile fourier_profile(const ScatteringSolution& sol, Profile which,
                                      Tolerance tol = {}) {
    tol.validate();
    const double R = sol.R;
    const auto breaks = sol.v.breakpoints();

    auto radial = [&sol, which](double r) {
        switch (which) {
        case Profile::g:
            return sol.g_at(r);
        case Profile::g_omega:
            return sol.g_at(r) * sol.omega_at(r);
        case Profile::omega:
            return sol.omega_at(r);
        }
        return 0.0;
    };

    FourierProfile out;
    if (R > 0.0) {
        auto moment = [radial](double r) { return radial(r) * r * r; };
        out.value_at_zero = 4.0 * M_PI * integrate_adaptive(moment, 0.0, R, tol, breaks).value;
    }
    // omega has no zero-mode: the a/r tail is not integrable. Only the
    // combination 2 k^2 omega_hat = g_hat carries the k -> 0 information.
    if (which == Profile::omega)
        out.value_at_zero = std::numeric_limits<double>::quiet_NaN();

    const double a = sol.a;
    out.eval = [radial, R, breaks, tol, which, a](double k) {
        double interior = 0.0;
        if (R > 0.0) {
            auto osc = [radial, k](double r) { return r * radial(r) * std::sin(k * r); };
            interior = (4.0 * M_PI / k) * integrate_adaptive(osc, 0.0, R, tol, breaks).value;
        }
        if (which != Profile::omega)
            return interior;
        // exterior tail int_R^inf r (a/r) sin(kr) dr = a cos(kR) / k in the
        // improper (Abel) sense, which the transform identity relies on
        return interior + 4.0 * M_PI * a * std::cos(k * R) / (k * k);
    };
    return out;
}

inline double fourier(const ScatteringSolution& sol, Profile which, double k,
                      Tolerance tol = {}) {
    return fourier_profile(sol, which, tol)(k);
}

} // namespace bosegas
