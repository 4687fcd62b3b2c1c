#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/localization/kernel.hpp"
#include "bosegas/numerics/quadrature.hpp"

namespace bosegas {

// The three constituents of the kinetic localization multiplier
//   F(p) = (2pi)^{-3} K*|chi^|^2(p)
//          - 2 (2pi)^{-3} theta^(p) [chi^ * (K chi^)](p)
//          + (2pi)^{-3} (int K |chi^|^2) theta^(p)^2
// with K(q) = (|q|^2 - s^{-2})_+. Exposing them separately makes the exact
// cancellation at p = 0 a stringent cross-check of the quadrature.
struct FTerms {
    double convolution = 0.0;
    double cross = 0.0;
    double constant = 0.0;

    double value() const { return convolution + cross + constant; }
    double largest() const {
        return std::max({std::fabs(convolution), std::fabs(cross), std::fabs(constant)});
    }
};

// Evaluator for F at box scale ell, defined by F(p) = F_{ell=1}(ell p).
//
// K is split as (|q|^2 - s^{-2}) + (s^{-2} - |q|^2)_+. The polynomial part
// reduces to exact moments of |chi^|^2 (Parseval) and to separable 1-d
// integrals with compactly supported smooth integrands; only the positive
// remainder, supported on the ball |q| <= 1/s, needs 3-d quadrature, done
// in spherical coordinates where the integrand is smooth. Every evaluation
// is repeated at 3/4 resolution and the pair must agree to quad_tol, else
// QuadratureBudgetExceeded. The term-3 constant is integrated once at an
// unrelated resolution so the F(0) = 0 identity stays a meaningful check.
class FMultiplier {
public:
    explicit FMultiplier(const LocalizationKernel& kernel, std::size_t radial = 80,
                         std::size_t polar = 48, std::size_t azimuthal = 96,
                         Tolerance quad_tol = {})
        : kernel_(kernel), s_(kernel.s()), inv_s2_(1.0 / (s_ * s_)), quad_tol_(quad_tol) {
        quad_tol_.validate();
        if (radial < 8 || polar < 8 || azimuthal < 8)
            throw Error("FMultiplier: quadrature resolution too small");
        m2_ = 3.0 * kernel_.grad2_1d();
        build_chat_table();
        build_sphere(radial, polar, azimuthal, base_);
        build_sphere((3 * radial) / 4, (3 * polar) / 4, (3 * azimuthal) / 4, check_);
        Sphere indep;
        build_sphere(radial + 37, polar + 21, azimuthal + 31, indep);
        const std::array<double, 3> zero = {0.0, 0.0, 0.0};
        const double b3 = ball(indep, [this, &zero](const std::array<double, 3>& y) {
            return chat2_prod(zero, y);
        });
        int_k_chi2_ = cube(2.0 * M_PI) * (m2_ - inv_s2_) + b3;
    }

    const LocalizationKernel& kernel() const { return kernel_; }

    double operator()(const std::array<double, 3>& p) const { return terms(p).value(); }

    FTerms terms(const std::array<double, 3>& p) const {
        const double ell = kernel_.ell();
        const std::array<double, 3> q = {ell * p[0], ell * p[1], ell * p[2]};
        const FTerms fine = eval(q, base_);
        const FTerms coarse = eval(q, check_);
        const double diff = std::fabs(fine.value() - coarse.value());
        const double scale = std::max(fine.largest(), 1.0);
        if (diff > std::max(quad_tol_.abs, quad_tol_.rel * scale)) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "FMultiplier: resolutions disagree by %.3e (scale %.3e)", diff, scale);
            throw QuadratureBudgetExceeded(buf);
        }
        return fine;
    }

private:
    struct Sphere {
        std::vector<double> r, wr;          // radial nodes on [0, 1/s]
        std::vector<std::array<double, 3>> dir;
        std::vector<double> wdir;
    };

    static double cube(double x) { return x * x * x; }

    void build_chat_table() {
        table_max_ = 1.0 / s_ + 48.0;
        const std::size_t n = static_cast<std::size_t>(table_max_ / table_step_) + 4;
        chat_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            chat_[i] = chat_direct(table_step_ * static_cast<double>(i));
    }

    // fixed composite GK15 of 2 int_0^{1/2} chi1(t) cos(kt) dt; panel count
    // grows with k to keep the phase per panel small
    double chat_direct(double k) const {
        const std::size_t panels = 6 + static_cast<std::size_t>(std::fabs(k) / 12.0);
        auto f = [this, k](double t) { return kernel_.chi1(t) * std::cos(k * t); };
        double acc = 0.0;
        for (std::size_t j = 0; j < panels; ++j) {
            const double a = 0.5 * static_cast<double>(j) / panels;
            const double b = 0.5 * static_cast<double>(j + 1) / panels;
            acc += detail::gk15(f, a, b).value;
        }
        return 2.0 * acc;
    }

    // cubic Lagrange interpolation on the uniform table; chi^ is even, and
    // arguments beyond the table fall back to direct quadrature
    double chat(double t) const {
        t = std::fabs(t);
        const double u = t / table_step_;
        const std::size_t i = static_cast<std::size_t>(u);
        if (i + 2 >= chat_.size())
            return chat_direct(t);
        const double x = u - static_cast<double>(i);
        const double ym = i == 0 ? chat_[1] : chat_[i - 1];
        const double y0 = chat_[i], y1 = chat_[i + 1], y2 = chat_[i + 2];
        const double wm = -x * (x - 1.0) * (x - 2.0) / 6.0;
        const double w0 = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
        const double w1 = -(x + 1.0) * x * (x - 2.0) / 2.0;
        const double w2 = (x + 1.0) * x * (x - 1.0) / 6.0;
        return wm * ym + w0 * y0 + w1 * y1 + w2 * y2;
    }

    double chat2_prod(const std::array<double, 3>& q, const std::array<double, 3>& y) const {
        const double a = chat(q[0] - y[0]), b = chat(q[1] - y[1]), c = chat(q[2] - y[2]);
        return a * a * b * b * c * c;
    }

    double chat_mixed_prod(const std::array<double, 3>& q, const std::array<double, 3>& y) const {
        return chat(q[0] - y[0]) * chat(y[0]) * chat(q[1] - y[1]) * chat(y[1]) *
               chat(q[2] - y[2]) * chat(y[2]);
    }

    void build_sphere(std::size_t nr, std::size_t nt, std::size_t nph, Sphere& sp) const {
        std::vector<double> x, w;
        detail::gauss_legendre(nr, x, w);
        const double rmax = 1.0 / s_;
        sp.r.resize(nr);
        sp.wr.resize(nr);
        for (std::size_t i = 0; i < nr; ++i) {
            sp.r[i] = 0.5 * rmax * (x[i] + 1.0);
            sp.wr[i] = 0.5 * rmax * w[i];
        }
        detail::gauss_legendre(nt, x, w); // cos(theta) on [-1, 1]
        sp.dir.clear();
        sp.wdir.clear();
        const double wphi = 2.0 * M_PI / static_cast<double>(nph);
        for (std::size_t i = 0; i < nt; ++i) {
            const double ct = x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (std::size_t j = 0; j < nph; ++j) {
                const double ph = wphi * (static_cast<double>(j) + 0.5);
                sp.dir.push_back({st * std::cos(ph), st * std::sin(ph), ct});
                sp.wdir.push_back(w[i] * wphi);
            }
        }
    }

    // int_{|y| <= 1/s} (s^{-2} - |y|^2) f(y) dy in spherical coordinates
    template <class F3>
    double ball(const Sphere& sp, F3&& f) const {
        double total = 0.0;
        std::array<double, 3> y;
        for (std::size_t i = 0; i < sp.r.size(); ++i) {
            const double r = sp.r[i];
            double shell = 0.0;
            for (std::size_t d = 0; d < sp.dir.size(); ++d) {
                y = {r * sp.dir[d][0], r * sp.dir[d][1], r * sp.dir[d][2]};
                shell += sp.wdir[d] * f(y);
            }
            total += sp.wr[i] * (inv_s2_ - r * r) * r * r * shell;
        }
        return total;
    }

    // alpha(t) = int chi^(t-u) chi^(u) du = 2 pi FT(chi1^2)(t). The bump's
    // derivatives grow steeply toward the support edge, so these 1-d
    // factors are integrated adaptively; fixed panels lose ~1e-7 here,
    // which the p = 0 cancellation would amplify to a visible residual.
    double alpha1(double t) const {
        return 2.0 * M_PI *
               integrate_adaptive(
                   [this, t](double x) {
                       const double c = kernel_.chi1(x);
                       return c * c * std::cos(t * x);
                   },
                   -0.5, 0.5, tight_1d())
                   .value;
    }

    // gamma(t) = int chi^(t-u) u^2 chi^(u) du, via u^2 chi^ = FT(-chi1'')
    // and one integration by parts to stay with first derivatives
    double gamma1(double t) const {
        return 2.0 * M_PI *
               integrate_adaptive(
                   [this, t](double x) {
                       const double d = kernel_.chi1_d1(x);
                       return d * (d * std::cos(t * x) - t * kernel_.chi1(x) * std::sin(t * x));
                   },
                   -0.5, 0.5, tight_1d())
                   .value;
    }

    static Tolerance tight_1d() {
        Tolerance tol;
        tol.rel = 1e-12;
        tol.abs = 1e-14;
        return tol;
    }

    FTerms eval(const std::array<double, 3>& q, const Sphere& sp) const {
        const double inv8pi3 = 1.0 / cube(2.0 * M_PI);
        const double q2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
        const double th = theta_hat(q, 1.0);

        const double b1 =
            ball(sp, [this, &q](const std::array<double, 3>& y) { return chat2_prod(q, y); });
        const double b2 =
            ball(sp, [this, &q](const std::array<double, 3>& y) { return chat_mixed_prod(q, y); });

        const double al[3] = {alpha1(q[0]), alpha1(q[1]), alpha1(q[2])};
        const double ga[3] = {gamma1(q[0]), gamma1(q[1]), gamma1(q[2])};
        const double smooth2 = ga[0] * al[1] * al[2] + al[0] * ga[1] * al[2] +
                               al[0] * al[1] * ga[2] - inv_s2_ * al[0] * al[1] * al[2];

        FTerms t;
        t.convolution = q2 + m2_ - inv_s2_ + inv8pi3 * b1;
        t.cross = -2.0 * inv8pi3 * th * (smooth2 + b2);
        t.constant = inv8pi3 * int_k_chi2_ * th * th;
        return t;
    }

    LocalizationKernel kernel_;
    double s_, inv_s2_;
    Tolerance quad_tol_;
    double m2_ = 0.0;
    double int_k_chi2_ = 0.0;

    double table_step_ = 0.005;
    double table_max_ = 0.0;
    std::vector<double> chat_;
    Sphere base_, check_;
};

// p-grids for sampling F: equally spaced points along a coordinate axis or
// the main diagonal, excluding the origin
inline std::vector<std::array<double, 3>> axis_ray(double pmax, std::size_t n) {
    std::vector<std::array<double, 3>> pts;
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = pmax * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back({t, 0.0, 0.0});
    }
    return pts;
}

inline std::vector<std::array<double, 3>> diagonal_ray(double pmax, std::size_t n) {
    std::vector<std::array<double, 3>> pts;
    const double inv3 = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = pmax * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back({t * inv3, t * inv3, t * inv3});
    }
    return pts;
}

// Piecewise comparison profile from the kinetic localization bound:
//   F_s(q) = q^2 - (1/2) s^{-2}   for q >= (5/6) s^{-1}
//   F_s(q) = C s q^2              for q <  (5/6) s^{-1}
// in ell = 1 coordinates, q = ell |p|. C is fitted as the max of
// F/(s q^2) over the inner region, so the report's value of `passes`
// reflects the outer region where the bound has real content.
struct FsBoundReport {
    bool passes = false;
    double fitted_c = 0.0;
    double worst_outer_margin = 0.0;
};

inline FsBoundReport fs_bound_check(const FMultiplier& fm,
                                    const std::vector<std::array<double, 3>>& grid) {
    // beyond s ~ 0.116 the outer slack (1/2 - M2 s^2) s^{-2} goes negative
    // for this bump, so cap the admissible s well inside that
    constexpr double s_star = 0.1;
    const double s = fm.kernel().s();
    if (!(s > 0.0) || s > s_star)
        throw Error("fs_bound_check: s exceeds the supported range");
    const double ell = fm.kernel().ell();
    const double cut = (5.0 / 6.0) / s;

    FsBoundReport rep;
    rep.passes = true;
    rep.worst_outer_margin = std::numeric_limits<double>::infinity();
    for (const auto& p : grid) {
        const double q = ell * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const double f = fm(p);
        if (q >= cut) {
            const double margin = (q * q - 0.5 / (s * s)) - f;
            rep.worst_outer_margin = std::min(rep.worst_outer_margin, margin);
            if (margin < 0.0)
                rep.passes = false;
        } else if (q > 0.0) {
            rep.fitted_c = std::max(rep.fitted_c, f / (s * q * q));
        }
    }
    return rep;
}

} // namespace bosegas
