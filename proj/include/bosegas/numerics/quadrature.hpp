#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <queue>
#include <vector>

#include "bosegas/errors.hpp"

namespace bosegas {

struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;
    int max_refinements = 4000;

    void validate() const {
        if (!(rel > 0.0) || !(abs >= 0.0) || max_refinements < 1)
            throw Error("Tolerance: rel > 0, abs >= 0, max_refinements >= 1 required");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1] (QUADPACK dqk15 constants). Kronrod
// abscissae are interior, so endpoint singularities are never sampled.
inline constexpr double gk_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

template <class F>
Panel gk15(F& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * gk_x[j]);
        fv[14 - j] = f(c + h * gk_x[j]);
    }
    double resk = gk_wk[7] * fv[7];
    double resg = gk_wg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        resk += gk_wk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1)
            resg += gk_wg[j / 2] * (fv[j] + fv[14 - j]);
    }
    // QUADPACK-style error estimate: scale the Gauss/Kronrod discrepancy by
    // the variation of f over the panel so smooth panels are not overrated.
    const double reskh = 0.5 * resk;
    double resasc = gk_wk[7] * std::fabs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += gk_wk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    resasc *= h;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (!std::isfinite(resk) || !std::isfinite(err))
        err = std::numeric_limits<double>::infinity();
    return {lo, hi, resk * h, err};
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence; good to machine precision for the moderate orders
// used here.
inline void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
        double z = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (std::size_t j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-15)
                break;
        }
        x[k] = -z;
        x[n - 1 - k] = z;
        w[k] = w[n - 1 - k] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

// Compensated accumulation for the final fixed-order reduction.
inline double neumaier_sum(const std::vector<double>& xs) {
    double s = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    return s + comp;
}

template <class F>
IntegralResult adapt_finite(F& f, const std::vector<double>& seed, const Tolerance& tol) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    std::vector<Panel> frozen; // panels at machine resolution, no longer splittable
    double total_v = 0.0, total_e = 0.0;
    for (std::size_t i = 0; i + 1 < seed.size(); ++i) {
        Panel p = gk15(f, seed[i], seed[i + 1]);
        total_v += p.value;
        total_e += p.error;
        queue.push(p);
    }
    int used = 0;
    auto target = [&] { return std::max(tol.abs, tol.rel * std::fabs(total_v)); };
    while (total_e > target() || !std::isfinite(total_v)) {
        if (used >= tol.max_refinements) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "integrate_adaptive: refinement budget exhausted, error %.3e vs "
                          "target %.3e over %zu panels, value %.6e",
                          total_e, target(), queue.size() + frozen.size(), total_v);
            throw NonConvergent(msg);
        }
        if (queue.empty())
            throw NonConvergent("integrate_adaptive: all panels at machine resolution");
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            frozen.push_back(worst);
            continue;
        }
        Panel a = gk15(f, worst.lo, mid);
        Panel b = gk15(f, mid, worst.hi);
        total_v += a.value + b.value - worst.value;
        total_e += a.error + b.error - worst.error;
        queue.push(a);
        queue.push(b);
        ++used;
    }
    // Fixed-order reduction: drain panels, sort by left endpoint, sum
    // compensated. Makes the reported value independent of heap layout.
    std::vector<Panel> panels = std::move(frozen);
    panels.reserve(panels.size() + queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    std::vector<double> vals(panels.size()), errs(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
        vals[i] = panels[i].value;
        errs[i] = panels[i].error;
    }
    return {neumaier_sum(vals), neumaier_sum(errs)};
}

} // namespace detail

// Adaptive quadrature over [lo, hi], hi may be +infinity. For an infinite
// upper limit the substitution x = lo + t/(1-t) is applied; decay_hint is the
// caller's estimate of p in f ~ x^{-p} (or faster) as x -> infinity and sets
// how finely the initial panels crowd toward t = 1. `breakpoints` lists
// interior abscissae where f has kinks or jumps so no panel straddles one.
template <class F>
IntegralResult integrate_adaptive(F&& f, double lo, double hi, Tolerance tol = {},
                                  const std::vector<double>& breakpoints = {},
                                  double decay_hint = 2.0) {
    tol.validate();
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
        throw InvalidInterval("integrate_adaptive: need lo < hi");
    if (std::isinf(lo))
        throw InvalidInterval("integrate_adaptive: lower limit must be finite");

    if (std::isinf(hi)) {
        auto g = [&f, lo](double t) {
            const double om = 1.0 - t;
            if (om <= 0.0)
                return 0.0; // rounding can land a node on t = 1 exactly
            return f(lo + t / om) / (om * om);
        };
        // Mapped integrand behaves like (1-t)^(p-2) near t = 1; crowd the
        // initial panels geometrically so the tail below the last node is
        // already under machine precision, then let refinement do the rest.
        const double p = std::max(decay_hint, 1.05);
        const int levels =
            std::clamp(static_cast<int>(std::ceil(53.0 / (p - 1.0))), 6, 46);
        std::vector<double> seed;
        seed.push_back(0.0);
        seed.push_back(0.5);
        double gap = 0.5;
        for (int i = 1; i < levels; ++i) {
            gap *= 0.5;
            seed.push_back(1.0 - gap);
        }
        seed.push_back(1.0);
        for (double b : breakpoints) {
            if (b > lo && std::isfinite(b))
                seed.push_back((b - lo) / (1.0 + (b - lo)));
        }
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
        return detail::adapt_finite(g, seed, tol);
    }

    std::vector<double> seed{lo, hi};
    for (double b : breakpoints)
        if (b > lo && b < hi)
            seed.push_back(b);
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    return detail::adapt_finite(f, seed, tol);
}

} // namespace bosegas
