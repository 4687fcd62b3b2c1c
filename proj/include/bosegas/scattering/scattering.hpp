#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/numerics/ode.hpp"
#include "bosegas/numerics/quadratic_form.hpp"
#include "bosegas/numerics/quadrature.hpp"
#include "bosegas/potentials/potential.hpp"

namespace bosegas {

// Scattering length from the radial equation u'' = v u / 2, u(r0) = 0,
// u'(r0) = 1 (r0 at the hard-core edge). Outside the range u is affine,
// u = c (r - a), so a = R - u(R)/u'(R); the log-derivative makes the
// normalization of u irrelevant. The grid is doubled until the Richardson
// step-halving stabilizes a itself to the requested tolerance.
inline double scattering_length_ode(const RadialPotential& v, Tolerance tol = {}) {
    tol.validate();
    const double r0 = v.core_radius();
    const double R = std::max(v.range(), r0);
    if (!(R > r0))
        return r0; // pure hard core or zero potential: u stays affine

    Tolerance permissive; // outer loop owns convergence; inner check off
    permissive.rel = 1.0;
    permissive.abs = 1e30;

    double a_prev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t n = 129; n <= (std::size_t{1} << 21); n = 2 * n - 1) {
        auto grid = RadialGrid::uniform(r0, R, n);
        RadialProfile p = solve_radial_ode(v, grid, permissive, 2);
        const double a = R - p.log_derivative_tail();
        if (std::isfinite(a) && !std::isnan(a_prev)) {
            const double diff = std::fabs(a - a_prev);
            // fourth-order integrator: the next halving moves a by ~diff/15
            if (diff <= 15.0 * std::max(tol.abs, tol.rel * std::fabs(a)))
                return a + (a - a_prev) / 15.0;
        }
        a_prev = a;
    }
    throw StepTooCoarse("scattering_length_ode: grid budget exhausted");
}

// Scattering length from the variational characterization: the minimum m of
// 4 pi int (|phi'|^2 + v phi^2 / 2) r^2 dr over phi(rtilde) = 1 equals
// 4 pi a / (1 - a/rtilde), inverted as a = m / (4 pi + m/rtilde). Three
// nested meshes give two Richardson extrapolations whose spread is the
// error estimate.
inline double scattering_length_variational(const RadialPotential& v, double rtilde,
                                            std::size_t mesh_n = 4001, Tolerance tol = {}) {
    tol.validate();
    if (!(rtilde > v.range()) || !(rtilde > v.core_radius()))
        throw Error("scattering_length_variational: rtilde must exceed the range");
    if (mesh_n < 16)
        throw MeshTooCoarse("scattering_length_variational: mesh too small");

    auto level = [&](std::size_t n) {
        std::vector<double> nodes = RadialGrid::uniform(0.0, rtilde, n).nodes;
        for (double b : v.breakpoints())
            if (b > 0.0 && b < rtilde)
                nodes.push_back(b);
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        const double m =
            minimize_quadratic_form(assemble_scattering_form(v, RadialGrid(nodes)));
        return m / (4.0 * M_PI + m / rtilde);
    };

    const double a1 = level(mesh_n);
    const double a2 = level(2 * mesh_n - 1);
    const double a3 = level(4 * mesh_n - 3);
    // P1 energies converge O(h^2) from above; extrapolate pairwise
    const double e12 = a2 + (a2 - a1) / 3.0;
    const double e23 = a3 + (a3 - a2) / 3.0;
    if (std::fabs(e23 - e12) > std::max(tol.abs, tol.rel * std::fabs(e23))) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "scattering_length_variational: refinements disagree by %.3e", e23 - e12);
        throw MeshTooCoarse(buf);
    }
    return e23;
}

// Scattering profile omega = 1 - phi and g = v (1 - omega) sampled on the
// caller's grid, plus dense evaluators for quadrature. Hard cores are not
// representable here (omega would need a unit plateau with infinite v);
// callers truncate first and pass to the limit.
struct ScatteringSolution {
    double a = 0.0;
    RadialGrid grid;
    std::vector<double> omega;
    std::vector<double> g;
    double g_omega_integral = 0.0;
    double R = 0.0;

    RadialPotential v;
    RadialProfile u; // normalized by c = u'(R): phi = u / (c r)
    double c = 1.0;

    double omega_at(double r) const {
        if (r <= 0.0)
            return 1.0 - 1.0 / c;
        if (r >= R)
            return a / r;
        return 1.0 - u.eval(r) / (c * r);
    }
    double g_at(double r) const { return v(r) * (1.0 - omega_at(r)); }
};

inline ScatteringSolution scattering_solution(const RadialPotential& v, const RadialGrid& grid,
                                              Tolerance tol = {}) {
    tol.validate();
    if (v.has_hard_core())
        throw HardCoreUnsupported(
            "scattering_solution: truncate the core and take the limit instead");
    grid.validate();
    if (!(grid.back() >= v.range()) || grid.front() != 0.0)
        throw Error("scattering_solution: grid must start at 0 and reach the range");

    ScatteringSolution sol;
    sol.v = v;
    sol.R = v.range();

    // the log-derivative needs u at R exactly; make sure R is a node
    std::vector<double> nodes = grid.nodes;
    if (sol.R > 0.0)
        nodes.push_back(sol.R);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    RadialGrid solve_grid(nodes);

    int substeps = 2;
    for (;;) {
        try {
            sol.u = solve_radial_ode(v, solve_grid, tol, substeps);
            break;
        } catch (const StepTooCoarse&) {
            if (substeps >= 4096)
                throw;
            substeps *= 2;
        }
    }

    sol.c = sol.u.du.back(); // u is affine beyond R, so u' is constant there
    const auto& n = solve_grid.nodes;
    const std::size_t iR = std::lower_bound(n.begin(), n.end(), sol.R) - n.begin();
    sol.a = (sol.R > 0.0) ? sol.R - sol.u.u[iR] / sol.u.du[iR] : 0.0;

    sol.grid = grid;
    sol.omega.resize(grid.size());
    sol.g.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        sol.omega[i] = sol.omega_at(r);
        sol.g[i] = v(r) * (1.0 - sol.omega[i]);
    }

    if (sol.R > 0.0) {
        auto f = [&sol](double r) { return sol.g_at(r) * sol.omega_at(r) * r * r; };
        sol.g_omega_integral =
            4.0 * M_PI * integrate_adaptive(f, 0.0, sol.R, tol, v.breakpoints()).value;
    }
    return sol;
}

// a(min{v, n}) for each level; increases to the hard-core-capable answer.
inline std::vector<double> truncation_limit(const RadialPotential& v,
                                            const std::vector<double>& levels,
                                            Tolerance tol = {}) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] > levels[i - 1]))
            throw Error("truncation_limit: levels must increase");
    std::vector<double> out;
    out.reserve(levels.size());
    for (double n : levels)
        out.push_back(scattering_length_ode(truncate(v, n), tol));
    return out;
}

// Scattering length subadditivity under the range split v = v_leq + v_gt:
// max of the parts <= a(v) <= sum of the parts.
struct AdditivityReport {
    double a_full = 0.0;
    double a_leq = 0.0;
    double a_gt = 0.0;
    bool holds = false;
};

inline AdditivityReport additivity_check(const RadialPotential& v, double R_split,
                                         Tolerance tol = {}, double slack_rel = 1e-8) {
    auto [v_leq, v_gt] = split_range(v, R_split);
    AdditivityReport rep;
    rep.a_full = scattering_length_ode(v, tol);
    rep.a_leq = scattering_length_ode(v_leq, tol);
    rep.a_gt = scattering_length_ode(v_gt, tol);
    const double slack = slack_rel * (rep.a_leq + rep.a_gt + rep.a_full) + 1e-14;
    rep.holds = std::max(rep.a_leq, rep.a_gt) <= rep.a_full + slack &&
                rep.a_full <= rep.a_leq + rep.a_gt + slack;
    return rep;
}

} // namespace bosegas
