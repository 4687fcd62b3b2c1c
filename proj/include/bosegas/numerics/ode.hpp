#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/potentials/potential.hpp"

namespace bosegas {

// Solution profile of u'' = (1/2) v u with u(r0) = 0, u'(r0) = 1 at the
// grid nodes. For steeply growing solutions (deep wells) the pair (u, u')
// is renormalized on the fly; ln_scale[i] holds the accumulated log factor,
// so the true values are u[i] * exp(ln_scale[i]). The ratio u/u' at one
// node is scale free, which is all the scattering length needs.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> ln_scale;
    double error = 0.0; // step-halving estimate on u(back)/u'(back)

    double log_derivative_tail() const { return u.back() / du.back(); }

    // Cubic Hermite interpolation between nodes. Only meaningful when the
    // profile's dynamic range fits in doubles (ln_scale handled by shifting
    // the bracketing nodes to a common scale).
    double eval(double r) const {
        const auto& n = grid.nodes;
        if (r <= n.front())
            return 0.0;
        if (r >= n.back()) {
            const std::size_t k = n.size() - 1;
            const double s = std::exp(ln_scale[k]);
            return (u[k] + du[k] * (r - n[k])) * s;
        }
        const std::size_t i =
            std::upper_bound(n.begin(), n.end(), r) - n.begin() - 1;
        const double h = n[i + 1] - n[i];
        const double t = (r - n[i]) / h;
        const double shift = std::exp(ln_scale[i] - ln_scale[i + 1]);
        const double u0 = u[i] * shift, m0 = du[i] * shift;
        const double u1 = u[i + 1], m1 = du[i + 1];
        const double t2 = t * t, t3 = t2 * t;
        const double val = (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * h * m0 +
                           (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * h * m1;
        return val * std::exp(ln_scale[i + 1]);
    }
};

namespace detail {

// One classical RK4 step for (u, w)' = (w, q(r) u).
template <class Q>
inline void rk4_step(Q& q, double r, double h, double& u, double& w) {
    const double k1u = w, k1w = q(r) * u;
    const double qm = q(r + 0.5 * h);
    const double k2u = w + 0.5 * h * k1w, k2w = qm * (u + 0.5 * h * k1u);
    const double k3u = w + 0.5 * h * k2w, k3w = qm * (u + 0.5 * h * k2u);
    const double qe = q(r + h);
    const double k4u = w + h * k3w, k4w = qe * (u + h * k3u);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
}

struct OdeRun {
    std::vector<double> u, du, ln_scale;
};

inline OdeRun integrate_radial(const RadialPotential& v, const std::vector<double>& nodes,
                               int substeps) {
    // Refined node set: caller's nodes plus every potential breakpoint, so
    // each RK4 substep sees a smooth (linear) coefficient.
    std::vector<double> fine = nodes;
    for (double b : v.breakpoints())
        if (b > nodes.front() && b < nodes.back())
            fine.push_back(b);
    std::sort(fine.begin(), fine.end());
    fine.erase(std::unique(fine.begin(), fine.end()), fine.end());

    const auto& segs = v.segments();
    OdeRun run;
    run.u.reserve(nodes.size());
    double u = 0.0, w = 1.0, lnsc = 0.0;
    std::size_t next_out = 0;
    auto emit = [&](double r) {
        while (next_out < nodes.size() && nodes[next_out] == r) {
            run.u.push_back(u);
            run.du.push_back(w);
            run.ln_scale.push_back(lnsc);
            ++next_out;
        }
    };
    emit(fine.front());
    for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
        const double a = fine[i], b = fine[i + 1];
        // locate the single segment covering this interval, if any
        const double mid = 0.5 * (a + b);
        const RadialPotential::Segment* seg = nullptr;
        for (const auto& s : segs)
            if (mid > s.r_lo && mid < s.r_hi) {
                seg = &s;
                break;
            }
        auto q = [seg](double r) { return seg ? 0.5 * seg->eval(r) : 0.0; };
        const double h = (b - a) / substeps;
        for (int k = 0; k < substeps; ++k) {
            rk4_step(q, a + k * h, h, u, w);
            const double mag = std::max(std::fabs(u), std::fabs(w));
            if (mag > 1e150) {
                u /= mag;
                w /= mag;
                lnsc += std::log(mag);
            }
        }
        emit(b);
    }
    return run;
}

} // namespace detail

// Fourth-order fixed-grid integration of u'' = (1/2) v u, u = 0 and u' = 1
// at the first grid node (the caller puts that node at the hard-core edge
// when there is one). The step-halving (Richardson) comparison yields the
// error estimate; if it misses the tolerance on the tail log-derivative the
// grid was too coarse for this potential.
inline RadialProfile solve_radial_ode(const RadialPotential& v, const RadialGrid& grid,
                                      Tolerance tol = {}, int substeps = 2) {
    tol.validate();
    grid.validate();
    if (substeps < 1)
        throw Error("solve_radial_ode: substeps must be >= 1");

    auto coarse = detail::integrate_radial(v, grid.nodes, substeps);
    auto fine = detail::integrate_radial(v, grid.nodes, 2 * substeps);
    const double ratio_c = coarse.u.back() / coarse.du.back();
    const double ratio_f = fine.u.back() / fine.du.back();
    const double est = std::fabs(ratio_c - ratio_f);
    if (!std::isfinite(ratio_f) || est > std::max(tol.abs, tol.rel * std::fabs(ratio_f)))
        throw StepTooCoarse("solve_radial_ode: halving the step moved u/u' by " +
                            std::to_string(est));

    RadialProfile out;
    out.grid = grid;
    out.u = std::move(fine.u);
    out.du = std::move(fine.du);
    out.ln_scale = std::move(fine.ln_scale);
    out.error = est;
    return out;
}

} // namespace bosegas
