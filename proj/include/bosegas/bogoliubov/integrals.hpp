#pragma once

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/localization/kernel.hpp"
#include "bosegas/localization/window.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/potentials/potential.hpp"
#include "bosegas/scattering/fourier.hpp"
#include "bosegas/scattering/scattering.hpp"

namespace bosegas {

// Coefficients of the quadratic (pairing) layer over a box of side ell:
//   tau(k) = (k^2 - c_kin / ell^2)_+        kinetic symbol, infrared-cut
//   A(k)   = (tau(k) + 16 pi rho a + rho_mu a) / n
//   B(k)   = W1_hat(k) / ell^3
// with n the particle count in the box. A is defined as 0 for an empty box,
// which turns every integral below into 0.
struct BogCoefficients {
    double n;
    double rho;    // n / ell^3
    double rho_mu; // density scale the box size was chosen for
    double rho_0;  // condensate density
    double ell;
    double a;
    double c_kin;
    WindowedPotential source;

    double tau(double k) const {
        const double t = k * k - c_kin / (ell * ell);
        return t > 0.0 ? t : 0.0;
    }
    // interaction shift: n A(k) = tau(k) + shift()
    double shift() const { return a * (16.0 * M_PI * rho + rho_mu); }
    double A(double k) const { return n > 0.0 ? (tau(k) + shift()) / n : 0.0; }
    double B(double k) const { return source.W1_hat(k) / (ell * ell * ell); }
};

// Ties the box size to the density scale: ell = K (rho_mu a)^{-1/2}.
inline WindowedPotential windowed_for_density(const RadialPotential& v,
                                              const ScatteringSolution& sol, double rho_mu,
                                              double K = 0.1, double s = 0.05) {
    if (!(rho_mu > 0.0))
        throw InvalidCoefficients("windowed_for_density: rho_mu must be positive");
    if (!(sol.a > 0.0))
        throw InvalidCoefficients("windowed_for_density: needs a positive scattering length");
    const double ell = K / std::sqrt(rho_mu * sol.a);
    return windowed_potential(v, sol, LocalizationKernel(ell, s, -1.0, 0.5, K));
}

inline BogCoefficients bog_coefficients(WindowedPotential wp, double rho, double rho_0) {
    if (!(rho > 0.0))
        throw InvalidCoefficients("bog_coefficients: rho must be positive");
    if (!(rho_0 >= 0.0) || rho_0 > rho)
        throw InvalidCoefficients("bog_coefficients: rho_0 must lie in [0, rho]");
    const double ell = wp.ell;
    const double a = wp.a;
    const double K = wp.kernel.K();
    const double rho_mu = K * K / (a * ell * ell); // ell = K (rho_mu a)^{-1/2} inverted
    if (rho > 20.0 * rho_mu * (1.0 + 1e-12)) {
        char msg[128];
        std::snprintf(msg, sizeof(msg), "bog_coefficients: rho/rho_mu = %.3f exceeds 20",
                      rho / rho_mu);
        throw InvalidCoefficients(msg);
    }
    BogCoefficients c{rho * ell * ell * ell, rho,    rho_mu,          rho_0,
                      ell,                  a,       wp.kernel.c_kin(), std::move(wp)};
    // |B|/A peaks at k = 0: W1 >= 0 makes |W1_hat| maximal there while tau
    // only grows with k, so one evaluation certifies the whole line
    const double ratio0 = rho * c.source.W1_integral() / c.shift();
    if (ratio0 > 0.5 * (1.0 + 1e-12)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "bog_coefficients: |B|/A = %.6f at k = 0 exceeds 1/2 (window excess too "
                      "large for this density)",
                      ratio0);
        throw InvalidCoefficients(msg);
    }
    return c;
}

// sqrt(A^2-B^2) - A + B^2/(2A), rationalized to -B^4 / (2A (A+X)^2) with
// X = sqrt((A-B)(A+B)) so nothing cancels when |B| << A
inline double regularized_deficit(double A, double B) {
    if (!(A > 0.0) || std::fabs(B) > A)
        throw InvalidCoefficients("regularized_deficit: need A > 0 and |B| <= A");
    const double X = std::sqrt((A - B) * (A + B));
    const double s = A + X;
    const double b2 = B * B;
    return -(b2 * b2) / (2.0 * A * s * s);
}

namespace detail {

// seams at the sinc oscillation scale of a transform supported on [0, R]
inline std::vector<double> half_period_breaks(double R, double k_max,
                                              std::vector<double> extra = {}) {
    if (R > 0.0)
        for (double k = M_PI / R; k < k_max; k += M_PI / R)
            extra.push_back(k);
    return extra;
}

// peak of k^2 |w(k)| over the trailing half oscillation before k_cut. A
// transform of data supported on [0, R] rings like E cos(kR + phase)/k^2 out
// there, so int_{k_cut}^inf w^2 dk ~ E^2/(6 k_cut^3); sampling one half
// period catches the envelope to a couple of percent, plenty for a tail
// that is itself a small correction.
template <class W>
double tail_envelope(W&& w, double k_cut, double R) {
    double peak = 0.0;
    const double lo = k_cut - M_PI / R;
    for (int i = 0; i <= 8; ++i) {
        const double k = lo + (M_PI / R) * (static_cast<double>(i) / 8.0);
        peak = std::max(peak, k * k * std::fabs(w(k)));
    }
    return peak;
}

// transform of the window excess W1 - g = g (1 - window)/window; it is of
// order (R/ell)^2, so it is integrated on its own rather than recovered as
// a difference of two O(1) transforms
inline double excess_hat(const WindowedPotential& wp, double k) {
    if (wp.R <= 0.0)
        return 0.0;
    auto f = [&wp, k](double r) {
        const double t = k * r;
        const double j0 = std::fabs(t) > 1e-8 ? std::sin(t) / t : 1.0 - t * t / 6.0;
        const double win = wp.window_at(r);
        return wp.sol.g_at(r) * ((1.0 - win) / win) * j0 * r * r;
    };
    std::vector<double> brk = wp.sol.v.breakpoints();
    const double period = std::fabs(k) > 0.0 ? M_PI / std::fabs(k) : 2.0 * wp.R;
    if (period < 0.5 * wp.R)
        for (double t = period; t < wp.R; t += period)
            brk.push_back(t);
    Tolerance tol;
    tol.rel = 1e-9;
    tol.abs = 1e-16;
    return 4.0 * M_PI * integrate_adaptive(f, 0.0, wp.R, tol, brk).value;
}

} // namespace detail

struct SecondBornIntegral {
    double value;      // (2 pi)^-3 int W1_hat(k)^2 / (2 k^2) d^3k
    double reference;  // int g omega dx of the bare solution
    double difference; // value - reference, the window's contribution
};

// Windowed route: value = reference + difference with the difference
// integrated directly as excess_hat (2 ghat + excess_hat), which stays
// accurate even when it is (R/ell)^2 below the reference.
inline SecondBornIntegral second_born_integral(const WindowedPotential& wp,
                                               const ScatteringSolution& sol) {
    if (wp.R != sol.R)
        throw Error("second_born_integral: window and solution describe different ranges");
    if (wp.R <= 0.0)
        return {sol.g_omega_integral, sol.g_omega_integral, 0.0};
    const auto ghat = fourier_profile(sol, Profile::g);
    auto density = [&](double k) {
        const double ex = detail::excess_hat(wp, k);
        return ex * (2.0 * ghat(k) + ex) / (4.0 * M_PI * M_PI);
    };
    Tolerance tol;
    tol.rel = 1e-7;
    tol.abs = 1e-12;
    // finite head, then the tail restored from the measured envelopes: past
    // the cutoff both transforms ring in phase (the same jump at R drives
    // them), so the leftover is close to (2 Eg Eh + Eh^2)/(6 k_cut^3)
    const double k_cut = 300.0 / wp.R;
    const double head =
        integrate_adaptive(density, 0.0, k_cut, tol,
                           detail::half_period_breaks(wp.R, k_cut))
            .value;
    const double eg = detail::tail_envelope([&ghat](double k) { return ghat(k); }, k_cut, wp.R);
    const double eh = detail::tail_envelope([&wp](double k) { return detail::excess_hat(wp, k); },
                                            k_cut, wp.R);
    const double difference = head + (2.0 * eg * eh + eh * eh) /
                                         (6.0 * k_cut * k_cut * k_cut) / (4.0 * M_PI * M_PI);
    return {sol.g_omega_integral + difference, sol.g_omega_integral, difference};
}

// Window disabled (chi*chi = 1): the transform identity omega_hat =
// ghat/(2k^2) makes the k-integral equal int g omega exactly, so the
// returned difference is pure quadrature error.
inline SecondBornIntegral second_born_integral(const ScatteringSolution& sol) {
    if (sol.R <= 0.0)
        return {sol.g_omega_integral, sol.g_omega_integral, 0.0};
    const auto ghat = fourier_profile(sol, Profile::g);
    auto density = [&](double k) {
        const double gh = ghat(k);
        return gh * gh / (4.0 * M_PI * M_PI);
    };
    Tolerance tol;
    tol.rel = 3e-7;
    tol.abs = 1e-12;
    const double k_cut = 300.0 / sol.R;
    const double head = integrate_adaptive(density, 0.0, k_cut, tol,
                                           detail::half_period_breaks(sol.R, k_cut))
                            .value;
    const double eg = detail::tail_envelope([&ghat](double k) { return ghat(k); }, k_cut, sol.R);
    const double value =
        head + eg * eg / (6.0 * k_cut * k_cut * k_cut) / (4.0 * M_PI * M_PI);
    return {value, sol.g_omega_integral, value - sol.g_omega_integral};
}

struct BogIntegralResult {
    double total;             // regularized + second_born_piece
    double regularized;       // (1/2) (2 pi)^-3 ell^3 n0 int (sqrt(A^2-B^2) - A + B^2/(2A)) d^3k
    double second_born_piece; // -(1/2) (2 pi)^-3 ell^3 n0 int B^2/(2A) d^3k
    double inner;             // (2 pi)^-3 int W1_hat^2 (1/(2(tau+shift)) - 1/(2k^2)) d^3k
    SecondBornIntegral second_born;
};

// Scalar Bogoliubov integral for a box holding n0 condensed particles. The
// unregularized integrand sqrt(A^2-B^2) - A has a k^-2 tail that is not
// integrable against k^2 dk, so the value is always produced as the split
//   regularized piece  +  (- B^2/(2A) piece),
// and the second piece is reduced through ell^3 B^2/(2A) = rho W1_hat^2 /
// (2 (tau + shift)) to the window transform, whose 1/(2k^2) part is the
// second Born integral above.
inline BogIntegralResult bog_integral(const BogCoefficients& c, double n0) {
    if (n0 < 0.0)
        throw InvalidCoefficients("bog_integral: n0 must be nonnegative");
    BogIntegralResult out{0.0, 0.0, 0.0, 0.0, {0.0, 0.0, 0.0}};
    if (c.n <= 0.0 || n0 <= 0.0) // empty box: A = 0 and the bound is vacuous
        return out;

    const double mu = c.shift();
    const double ell = c.ell;
    const double ell3 = ell * ell * ell;
    const double R = c.source.R;
    const std::vector<double> structure = {std::sqrt(mu), std::sqrt(c.c_kin) / ell,
                                           std::sqrt(2.0 * c.c_kin) / ell};

    // k^2 absorbed into the parenthesis so the k -> 0 limit is -W1_hat(0)^2/2.
    // Beyond the cutoff the parenthesis collapses to (c_kin/ell^2 - mu)/
    // (2(tau+mu)) and the neglected piece has envelope c_kin W1_hat^2 /
    // (4 pi^2 ell^2 k^3), a few parts in 1e6 of the value at k_cut R = 400.
    auto inner_density = [&c, mu](double k) {
        const double w = c.source.W1_hat(k);
        return w * w * (k * k / (2.0 * (c.tau(k) + mu)) - 0.5) / (2.0 * M_PI * M_PI);
    };
    Tolerance inner_tol;
    inner_tol.rel = 1e-7;
    inner_tol.abs = 1e-10;
    const double k_in = 400.0 / R;
    out.inner = integrate_adaptive(inner_density, 0.0, k_in, inner_tol,
                                   detail::half_period_breaks(R, k_in, structure))
                    .value;

    out.second_born = second_born_integral(c.source, c.source.sol);
    out.second_born_piece = -0.5 * n0 * c.rho * (out.inner + out.second_born.value);

    // the deficit dies like B^4/A^3 ~ W1_hat^4 n^3 / k^6, utterly spent well
    // before k_cut R = 60
    auto reg_density = [&c, ell3](double k) {
        const double Ak = c.A(k);
        const double Bk = c.source.W1_hat(k) / ell3;
        return ell3 * regularized_deficit(Ak, Bk) * k * k / (2.0 * M_PI * M_PI);
    };
    Tolerance reg_tol;
    reg_tol.rel = 1e-8;
    reg_tol.abs = 1e-18;
    const double k_reg = 60.0 / R;
    out.regularized = 0.5 * n0 *
                      integrate_adaptive(reg_density, 0.0, k_reg, reg_tol,
                                         detail::half_period_breaks(R, k_reg, structure))
                          .value;
    out.total = out.regularized + out.second_born_piece;
    return out;
}

struct LhyCoefficient {
    double j_value;      // int_0^inf (sqrt(t^4+2t^2) - t^2 - 1 + 1/(2t^2)) t^2 dt
    double j_crosscheck; // same integral with the tail folded onto (0, 1]
    double coefficient;  // 2^{7/2} j / sqrt(pi), the dimensionless prefactor
};

// The Bogoliubov energy integral in its dimensionless form. With u = 1/t^2
// and S = sqrt(1+2u) the integrand rationalizes to
//   f(t) = u (S + 3) / (2 (S + 1) (S + 1 + u)),
// exact for all t > 0 and free of cancellation at either end (the textbook
// form sqrt(t^4+2t^2) - t^2 - 1 + 1/(2t^2) loses every digit once t^2
// outgrows 1/eps); closed form of the integral is 8 sqrt(2)/15.
inline LhyCoefficient lhy_coefficient() {
    auto f = [](double t) {
        if (t < 1e-7) // S-dominated regime: f = 1/(2 (1 + sqrt(2) t)) + O(t^2)
            return 0.5 / (1.0 + std::sqrt(2.0) * t);
        const double u = 1.0 / (t * t);
        const double s = std::sqrt(1.0 + 2.0 * u);
        return 0.5 * u * (s + 3.0) / ((s + 1.0) * (s + 1.0 + u));
    };
    Tolerance tol;
    tol.rel = 3e-13;
    tol.abs = 1e-15;
    const double inf = std::numeric_limits<double>::infinity();
    const double direct = integrate_adaptive(f, 0.0, inf, tol, {}, 2.0).value;
    const double head = integrate_adaptive(f, 0.0, 1.0, tol).value;
    const double folded = integrate_adaptive(
                              [&f](double u) {
                                  if (u <= 0.0)
                                      return 0.5; // limit of f(1/u)/u^2
                                  return f(1.0 / u) / (u * u);
                              },
                              0.0, 1.0, tol)
                              .value;
    return {direct, head + folded, std::pow(2.0, 3.5) * direct / std::sqrt(M_PI)};
}

struct ScalingRow {
    double rho_mu;
    double ell;
    double mismatch; // int | W1^2/(2(tau+shift)) - W1^2/(2k^2) | d^3k
    double quartic;  // rho^2 int W1^4 / (tau+shift)^3 d^3k
};

struct IntegralScalings {
    std::vector<ScalingRow> rows;
    double mismatch_exponent; // log-log slope in rho_mu, expected 1/2
    double quartic_exponent;
};

// Both integrals are expected to follow the a sqrt(rho_mu a^3) law; the
// table evaluates them at the vertex density rho = rho_mu across the given
// rho_mu values and fits the exponents.
inline IntegralScalings integral_error_scalings(const RadialPotential& v, double K,
                                                const std::vector<double>& rho_mu_values,
                                                double s = 0.05) {
    if (rho_mu_values.size() < 2)
        throw Error("integral_error_scalings: need at least two rho_mu values");
    const auto sol = scattering_solution(v, RadialGrid::uniform(0.0, v.range(), 801));

    IntegralScalings out{};
    for (double rho_mu : rho_mu_values) {
        const auto c = bog_coefficients(windowed_for_density(v, sol, rho_mu, K, s), rho_mu, rho_mu);
        const double mu = c.shift();
        const double R = c.source.R;
        const std::vector<double> structure = {std::sqrt(mu), std::sqrt(c.c_kin) / c.ell,
                                               std::sqrt(2.0 * c.c_kin) / c.ell};
        Tolerance tol;
        tol.rel = 1e-6;
        tol.abs = 1e-12;

        // the bracket falls off like 1/k^2 past the kinetic cutoff, so the
        // k^-6 leftover beyond k_cut R = 400 is far below the fit noise
        auto mismatch_density = [&c, mu](double k) {
            const double w = c.source.W1_hat(k);
            return 4.0 * M_PI * w * w * std::fabs(k * k / (2.0 * (c.tau(k) + mu)) - 0.5);
        };
        const double mismatch =
            integrate_adaptive(mismatch_density, 0.0, 400.0 / R, tol,
                               detail::half_period_breaks(R, 400.0 / R, structure))
                .value;

        auto quartic_density = [&c, mu](double k) {
            const double w = c.source.W1_hat(k);
            const double w2 = w * w;
            const double d = c.tau(k) + mu;
            return 4.0 * M_PI * c.rho * c.rho * w2 * w2 * k * k / (d * d * d);
        };
        const double quartic =
            integrate_adaptive(quartic_density, 0.0, 60.0 / R, tol,
                               detail::half_period_breaks(R, 60.0 / R, structure))
                .value;

        out.rows.push_back({rho_mu, c.ell, mismatch, quartic});
    }

    auto fit = [&out](auto field) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double n = static_cast<double>(out.rows.size());
        for (const auto& r : out.rows) {
            const double x = std::log(r.rho_mu);
            const double y = std::log(field(r));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.mismatch_exponent = fit([](const ScalingRow& r) { return r.mismatch; });
    out.quartic_exponent = fit([](const ScalingRow& r) { return r.quartic; });
    return out;
}

} // namespace bosegas
