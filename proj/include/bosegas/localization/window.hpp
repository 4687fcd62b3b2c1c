#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/localization/kernel.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/scattering/scattering.hpp"

namespace bosegas {

// Interaction seen by one localized box: the bare potential divided by the
// window chi*chi(x/ell), together with the once- and twice-screened variants
//   W  = v / (chi*chi),  W1 = W (1 - omega),  W2 = W (1 - omega^2).
// The window is a product of 1-d autoconvolutions and hence not radial; the
// stored profiles radialize it along the space diagonal, the direction where
// the window is smallest (the same direction that pins D), so every stored
// ratio errs on the large side. The direction dependence only enters at
// (r/ell)^4 because log chi*chi is isotropic through second order, so inside
// the admissible range this choice is invisible at the tolerances checked.
struct WindowedPotential {
    double a = 0.0;     // scattering length of the bare potential
    double R = 0.0;     // range of the bare potential
    double ell = 1.0;   // box scale
    double D = 0.0;     // largest admissible R/ell, from the kernel
    double ratio = 0.0; // R/ell actually in force

    RadialGrid grid;        // bare-solution nodes up to and including R
    std::vector<double> W;  // v / window on the grid
    std::vector<double> W1; // g / window
    std::vector<double> W2; // g (1 + omega) / window

    LocalizationKernel kernel;
    ScatteringSolution sol;

    // uniform samples of the window on [0, R] for cheap dense evaluation
    std::vector<double> window_table;
    double window_step = 0.0;

    double window_direct(double r) const {
        constexpr double inv_sqrt3 = 0.57735026918962576;
        const double c = kernel.cc1(r * inv_sqrt3 / ell);
        return c * c * c;
    }

    // cubic Lagrange on the table; off-table radii fall back to quadrature
    double window_at(double r) const {
        if (window_step <= 0.0 || r < 0.0)
            return window_direct(r);
        const double u = r / window_step;
        const std::size_t i = static_cast<std::size_t>(u);
        if (i + 2 >= window_table.size())
            return window_direct(r);
        const double x = u - static_cast<double>(i);
        const double ym = i == 0 ? window_table[1] : window_table[i - 1];
        const double y0 = window_table[i], y1 = window_table[i + 1], y2 = window_table[i + 2];
        const double wm = -x * (x - 1.0) * (x - 2.0) / 6.0;
        const double w0 = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
        const double w1 = -(x + 1.0) * x * (x - 2.0) / 2.0;
        const double w2 = (x + 1.0) * x * (x - 1.0) / 6.0;
        return wm * ym + w0 * y0 + w1 * y1 + w2 * y2;
    }

    double W_at(double r) const { return r < R ? sol.v(r) / window_at(r) : 0.0; }
    double W1_at(double r) const { return r < R ? sol.g_at(r) / window_at(r) : 0.0; }
    double W2_at(double r) const {
        return r < R ? sol.g_at(r) * (1.0 + sol.omega_at(r)) / window_at(r) : 0.0;
    }

    // radial transform 4 pi int_0^R W1(r) sin(kr)/(kr) r^2 dr; |W1_hat| is
    // maximal at k = 0 because W1 >= 0 and |sinc| <= 1
    double W1_hat(double k) const {
        if (R <= 0.0)
            return 0.0;
        auto f = [this, k](double r) {
            double j0 = 1.0;
            const double t = k * r;
            if (std::fabs(t) > 1e-8)
                j0 = std::sin(t) / t;
            else
                j0 = 1.0 - t * t / 6.0;
            return W1_at(r) * j0 * r * r;
        };
        std::vector<double> brk = sol.v.breakpoints();
        // keep at most half an oscillation per panel once kR is large
        const double period = std::fabs(k) > 0.0 ? M_PI / std::fabs(k) : 2.0 * R;
        if (period < 0.5 * R)
            for (double t = period; t < R; t += period)
                brk.push_back(t);
        return 4.0 * M_PI * integrate_adaptive(f, 0.0, R, Tolerance{}, brk).value;
    }

    double W1_integral() const { return W1_hat(0.0); }
};

inline WindowedPotential windowed_potential(const RadialPotential& v,
                                            const ScatteringSolution& sol,
                                            const LocalizationKernel& kernel) {
    WindowedPotential wp;
    wp.a = sol.a;
    wp.R = sol.R;
    wp.ell = kernel.ell();
    wp.D = kernel.D();
    wp.ratio = wp.ell > 0.0 ? wp.R / wp.ell : 0.0;
    wp.kernel = kernel;
    wp.sol = sol;

    // admissibility R/ell <= D: with ell = K (rho_mu a)^{-1/2} this is the
    // density-side condition rho_mu a R^2 <= (K D)^2
    if (!(wp.ratio <= wp.D)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "windowed_potential: R/ell = %.3e exceeds D = %.3e",
                      wp.ratio, wp.D);
        throw RangeTooLarge(buf);
    }
    if (v.range() != sol.R)
        throw Error("windowed_potential: potential and solution disagree on the range");

    if (wp.R > 0.0) {
        const std::size_t n = 513;
        wp.window_step = wp.R / static_cast<double>(n - 1);
        wp.window_table.resize(n + 3); // cushion so r = R stays on-table
        for (std::size_t i = 0; i < wp.window_table.size(); ++i)
            wp.window_table[i] = wp.window_direct(wp.window_step * static_cast<double>(i));
    }

    std::vector<double> nodes;
    for (double r : sol.grid.nodes)
        if (r <= wp.R)
            nodes.push_back(r);
    if (nodes.empty() || nodes.back() < wp.R)
        nodes.push_back(wp.R);
    wp.grid = RadialGrid(nodes);

    wp.W.resize(nodes.size());
    wp.W1.resize(nodes.size());
    wp.W2.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        const double win = wp.window_at(r);
        const double om = sol.omega_at(r);
        wp.W[i] = sol.v(r) / win;
        wp.W1[i] = sol.v(r) * (1.0 - om) / win;
        wp.W2[i] = sol.v(r) * (1.0 - om * om) / win;
    }
    return wp;
}

// Pointwise check of g <= W1 <= g (1 + C (R/ell)^2) on the stored grid. The
// constant is measured, not assumed: fitted_c is the smallest C making the
// upper bound hold, and callers compare fits across R/ell values.
struct SandwichReport {
    double min_rel = 0.0;  // min of W1/g - 1 over nodes with g > 0
    double max_rel = 0.0;  // max of the same
    double fitted_c = 0.0; // max_rel / (R/ell)^2
    bool holds = false;    // min_rel >= -slack
};

inline SandwichReport sandwich_check(const WindowedPotential& wp, double slack = 1e-12) {
    SandwichReport rep;
    bool first = true;
    for (std::size_t i = 0; i < wp.grid.size(); ++i) {
        const double g = wp.sol.g_at(wp.grid.nodes[i]);
        if (!(g > 0.0))
            continue;
        const double rel = wp.W1[i] / g - 1.0;
        if (first || rel < rep.min_rel)
            rep.min_rel = rel;
        if (first || rel > rep.max_rel)
            rep.max_rel = rel;
        first = false;
    }
    if (wp.ratio > 0.0)
        rep.fitted_c = rep.max_rel / (wp.ratio * wp.ratio);
    rep.holds = !first && rep.min_rel >= -slack;
    return rep;
}

// One row of the two-body kernel w1(x,y) = chi(x/ell) W1(x-y) chi(y/ell)
// integrated over y, evaluated as chi(x/ell) (W1 * chi(./ell))(x). The
// convolution runs over the support of W1 in spherical coordinates with
// Gauss-Legendre panels per potential segment.
inline double row_integral(const WindowedPotential& wp, const std::array<double, 3>& x,
                           std::size_t nr = 24, std::size_t nth = 24, std::size_t nph = 48) {
    const double cx = wp.kernel.chi({x[0] / wp.ell, x[1] / wp.ell, x[2] / wp.ell});
    if (cx == 0.0 || wp.R <= 0.0)
        return 0.0;

    std::vector<double> gx, gw;
    detail::gauss_legendre(nth, gx, gw); // cos(theta) nodes on [-1, 1]

    std::vector<double> seg = wp.sol.v.breakpoints();
    seg.push_back(0.0);
    std::sort(seg.begin(), seg.end());
    seg.erase(std::unique(seg.begin(), seg.end()), seg.end());
    while (!seg.empty() && seg.back() > wp.R)
        seg.pop_back();
    if (seg.empty() || seg.back() < wp.R)
        seg.push_back(wp.R);

    std::vector<double> rx, rw;
    detail::gauss_legendre(nr, rx, rw);

    double conv = 0.0;
    for (std::size_t s = 0; s + 1 < seg.size(); ++s) {
        const double lo = seg[s], hi = seg[s + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < nr; ++i) {
            const double r = mid + half * rx[i];
            const double w1r = wp.W1_at(r);
            if (w1r == 0.0)
                continue;
            double ang = 0.0;
            for (std::size_t j = 0; j < nth; ++j) {
                const double ct = gx[j];
                const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                double phi_sum = 0.0;
                for (std::size_t m = 0; m < nph; ++m) {
                    const double ph = 2.0 * M_PI * (static_cast<double>(m) + 0.5) /
                                      static_cast<double>(nph);
                    const std::array<double, 3> y = {(x[0] - r * st * std::cos(ph)) / wp.ell,
                                                     (x[1] - r * st * std::sin(ph)) / wp.ell,
                                                     (x[2] - r * ct) / wp.ell};
                    phi_sum += wp.kernel.chi(y);
                }
                ang += gw[j] * phi_sum * 2.0 * M_PI / static_cast<double>(nph);
            }
            conv += half * rw[i] * w1r * r * r * ang;
        }
    }
    return cx * conv;
}

struct RowIntegralReport {
    double max_value = 0.0;
    double fitted_c = 0.0; // max_value / a
    std::array<double, 3> argmax = {0.0, 0.0, 0.0};
};

// Scan x over the center plus axis and diagonal rays covering the bump
// support; the maximum sits at the center where chi peaks, the rays guard
// against surprises from the product structure.
inline RowIntegralReport row_integral_scan(const WindowedPotential& wp, std::size_t nradii = 8) {
    std::vector<std::array<double, 3>> xs = {{0.0, 0.0, 0.0}};
    constexpr double inv_sqrt3 = 0.57735026918962576;
    for (std::size_t i = 1; i <= nradii; ++i) {
        const double r = 0.55 * wp.ell * static_cast<double>(i) / static_cast<double>(nradii);
        xs.push_back({r, 0.0, 0.0});
        xs.push_back({r * inv_sqrt3, r * inv_sqrt3, r * inv_sqrt3});
    }
    RowIntegralReport rep;
    for (const auto& x : xs) {
        const double val = row_integral(wp, x);
        if (val > rep.max_value) {
            rep.max_value = val;
            rep.argmax = x;
        }
    }
    if (wp.a > 0.0)
        rep.fitted_c = rep.max_value / wp.a;
    return rep;
}

} // namespace bosegas
