#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/quadrature.hpp"

namespace bosegas {

namespace detail {

// 1-d smooth bump on (-1/2, 1/2), zero outside, with all derivatives
// vanishing at the edges
inline double eta_bump(double t) {
    if (std::fabs(t) >= 0.5)
        return 0.0;
    return std::exp(-1.0 / (1.0 - 4.0 * t * t));
}

inline double eta_bump_d1(double t) {
    if (std::fabs(t) >= 0.5)
        return 0.0;
    const double w = 1.0 - 4.0 * t * t;
    return eta_bump(t) * (-8.0 * t / (w * w));
}

// sin(t/2)/(t/2) with the analytic limit at t = 0
inline double box_ft_factor(double t) {
    const double h = 0.5 * t;
    if (std::fabs(h) < 1e-6)
        return 1.0 - h * h / 6.0;
    return std::sin(h) / h;
}

} // namespace detail

// Product localization bump chi(x) = prod_i chi1(x_i) with chi1 a normalized
// 1-d bump (int chi1^2 = 1, so int chi^2 = 1), plus the box-geometry
// constants tied to it. Lengths here are in units of the box scale ell;
// callers divide physical arguments by ell.
class LocalizationKernel {
public:
    explicit LocalizationKernel(double ell = 1.0, double s = 0.05, double c_kin = -1.0,
                                double b = 0.5, double K = 0.1)
        : ell_(ell), s_(s), c_kin_(c_kin > 0.0 ? c_kin : 0.25 / (s * s)), b_(b), K_(K) {
        if (!(ell_ > 0.0) || !(s_ > 0.0) || !(c_kin_ > 0.0) || !(b_ > 0.0) || !(K_ > 0.0))
            throw Error("LocalizationKernel: parameters must be positive");
        Tolerance tight;
        tight.rel = 1e-13;
        tight.abs = 1e-15;
        const double n2 =
            integrate_adaptive([](double t) { return detail::eta_bump(t) * detail::eta_bump(t); },
                               -0.5, 0.5, tight)
                .value;
        norm_ = 1.0 / std::sqrt(n2);
        grad2_1d_ = integrate_adaptive(
                        [this](double t) {
                            const double d = norm_ * detail::eta_bump_d1(t);
                            return d * d;
                        },
                        -0.5, 0.5, tight)
                        .value;
        d_ = locate_half_level();
    }

    double ell() const { return ell_; }
    double s() const { return s_; }
    double c_kin() const { return c_kin_; }
    double b() const { return b_; }
    double K() const { return K_; }
    double D() const { return d_; }

    // normalized 1-d profile and the product bump
    double chi1(double t) const { return norm_ * detail::eta_bump(t); }
    double chi(const std::array<double, 3>& x) const {
        return chi1(x[0]) * chi1(x[1]) * chi1(x[2]);
    }
    double chi1_d1(double t) const { return norm_ * detail::eta_bump_d1(t); }
    double chi_sup() const { return chi1(0.0) * chi1(0.0) * chi1(0.0); }

    // int (chi1')^2, which fixes int |grad chi|^2 = 3 * grad2_1d
    double grad2_1d() const { return grad2_1d_; }

    // 1-d autoconvolution (chi1*chi1)(t); equals 1 at t = 0
    double cc1(double t) const {
        t = std::fabs(t);
        if (t >= 1.0)
            return 0.0;
        Tolerance tol;
        tol.rel = 1e-12;
        tol.abs = 1e-15;
        return integrate_adaptive([this, t](double x) { return chi1(x) * chi1(t - x); }, t - 0.5,
                                  0.5, tol)
            .value;
    }

    // chi*chi at a point in units of ell (separable product), and its
    // section along a coordinate axis
    double chi_conv_chi(const std::array<double, 3>& x) const {
        return cc1(x[0]) * cc1(x[1]) * cc1(x[2]);
    }
    double chi_conv_chi(double r_axis) const { return cc1(r_axis); }

    // Fourier factor of chi1 under f^(k) = int f e^{-ikx}: real and even
    double chat(double k) const {
        Tolerance tol;
        tol.rel = 1e-12;
        tol.abs = 1e-15;
        return 2.0 *
               integrate_adaptive([this, k](double t) { return chi1(t) * std::cos(k * t); }, 0.0,
                                  0.5, tol)
                   .value;
    }

private:
    // largest D with chi*chi >= 1/2 on |x| <= D; the minimum over
    // directions of the product is what matters, so bisect on it with the
    // axis, face and space diagonals plus an octant sweep as candidates
    double locate_half_level() const {
        auto min_over_directions = [this](double r) {
            double worst = cc1(r); // axis
            const double inv2 = 1.0 / std::sqrt(2.0), inv3 = 1.0 / std::sqrt(3.0);
            worst = std::min(worst, cc1(r * inv2) * cc1(r * inv2));
            worst = std::min(worst, cc1(r * inv3) * cc1(r * inv3) * cc1(r * inv3));
            const int nth = 9, nph = 9;
            for (int i = 0; i < nth; ++i) {
                const double th = 0.5 * M_PI * (i + 0.5) / nth;
                for (int j = 0; j < nph; ++j) {
                    const double ph = 0.25 * M_PI * (j + 0.5) / nph;
                    const std::array<double, 3> w = {std::sin(th) * std::cos(ph),
                                                     std::sin(th) * std::sin(ph), std::cos(th)};
                    worst = std::min(worst, cc1(r * w[0]) * cc1(r * w[1]) * cc1(r * w[2]));
                }
            }
            return worst;
        };
        double lo = 0.0, hi = 1.0; // min is 1 at r=0 and 0 at r=1
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (min_over_directions(mid) >= 0.5 ? lo : hi) = mid;
        }
        return lo;
    }

    double ell_, s_, c_kin_, b_, K_;
    double norm_ = 1.0;
    double grad2_1d_ = 0.0;
    double d_ = 0.0;
};

// box indicator FT: prod_i sin(ell p_i / 2)/(ell p_i / 2), equal to 1 at p=0
inline double theta_hat(const std::array<double, 3>& p, double ell = 1.0) {
    return detail::box_ft_factor(ell * p[0]) * detail::box_ft_factor(ell * p[1]) *
           detail::box_ft_factor(ell * p[2]);
}

// the averaged-projection multiplier 1 - theta_hat(ell p)^2
inline double quav_multiplier(const std::array<double, 3>& p, double ell = 1.0) {
    const double th = theta_hat(p, ell);
    return 1.0 - th * th;
}

// Largest beta in (0,1), on a bisection grid, with
//   1 - theta_hat(p)^2 <= beta^{-1} |p|^2 / (|p|^2 + beta)
// on a dense p-grid (axis, face and space diagonals; includes the pi
// multiples where theta_hat passes through its zeros). The binding point
// sits on the axis near |p| = 6.13.
inline double quav_beta_search() {
    std::vector<double> mags;
    for (int k = 1; k <= 2400; ++k)
        mags.push_back(0.01 * k);
    for (double m = 24.0; m <= 120.0; m += 0.05)
        mags.push_back(m);
    for (int k = 1; k <= 38; ++k)
        mags.push_back(M_PI * k);
    const double inv2 = 1.0 / std::sqrt(2.0), inv3 = 1.0 / std::sqrt(3.0);
    const std::array<std::array<double, 3>, 3> dirs = {
        {{1.0, 0.0, 0.0}, {inv2, inv2, 0.0}, {inv3, inv3, inv3}}};

    struct Pt {
        double lhs, q;
    };
    std::vector<Pt> pts;
    pts.reserve(mags.size() * dirs.size());
    for (const auto& d : dirs)
        for (double m : mags) {
            const std::array<double, 3> p = {m * d[0], m * d[1], m * d[2]};
            pts.push_back({quav_multiplier(p), m * m});
        }

    auto feasible = [&pts](double beta) {
        for (const auto& pt : pts)
            if (pt.lhs * beta * (pt.q + beta) > pt.q)
                return false;
        return true;
    };
    if (!feasible(1e-8))
        throw NotFound("quav_beta_search: no admissible beta");
    double lo = 1e-8, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace bosegas
