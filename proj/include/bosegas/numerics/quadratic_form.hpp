#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/grid.hpp"
#include "bosegas/potentials/potential.hpp"

namespace bosegas {

// Discretized energy E(phi) = 4 pi * int (phi'^2 + v phi^2 / 2) r^2 dr over
// radial profiles phi on the mesh. The assembled tridiagonal matrices
// (diag, off) drive the solve; the per-element pieces are kept so the
// minimum can be evaluated as a sum of nonnegative element energies.
// Evaluating the global form instead loses digits to cancellation once the
// mesh is fine (the stiffness entries grow like 1/h while their sum stays
// O(1)). Nodes below first_free are clamped to zero (hard core), the last
// node carries the boundary value.
struct QuadraticForm {
    struct Element {
        double s;   // stiffness factor: energy s * (phi_hi - phi_lo)^2
        double p00; // potential mass terms
        double p01;
        double p11;
    };

    RadialGrid mesh;
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<Element> elements; // one per mesh interval
    std::size_t first_free = 0;

    double operator()(const std::vector<double>& phi) const {
        double e = 0.0;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const Element& el = elements[i];
            const double pa = phi[i], pb = phi[i + 1], d = pb - pa;
            e += el.s * d * d + el.p00 * pa * pa + 2.0 * el.p01 * pa * pb + el.p11 * pb * pb;
        }
        return e;
    }
};

// Piecewise-linear (P1) assembly. The mesh must contain the hard-core edge
// as a node when there is one; placing the potential's breakpoints on the
// mesh keeps the per-element Gauss rule exact (v is linear per element and
// the integrand degree is then five).
inline QuadraticForm assemble_scattering_form(const RadialPotential& v, const RadialGrid& mesh) {
    mesh.validate();
    const auto& r = mesh.nodes;
    const std::size_t n = r.size();
    QuadraticForm form;
    form.mesh = mesh;
    form.diag.assign(n, 0.0);
    form.off.assign(n - 1, 0.0);
    form.elements.resize(n - 1);

    // 3-point Gauss-Legendre on [-1, 1]
    static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double a = r[e], b = r[e + 1], h = b - a;
        const double s = 4.0 * M_PI * (b * b * b - a * a * a) / (3.0 * h * h);
        form.diag[e] += s;
        form.diag[e + 1] += s;
        form.off[e] -= s;
        double p00 = 0.0, p01 = 0.0, p11 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double x = 0.5 * (a + b) + 0.5 * h * gx[k];
            const double wq = 0.5 * h * gw[k];
            const double vv = v(x);
            if (vv == 0.0)
                continue;
            const double la = (b - x) / h, lb = (x - a) / h;
            const double c = 4.0 * M_PI * wq * 0.5 * vv * x * x;
            p00 += c * la * la;
            p01 += c * la * lb;
            p11 += c * lb * lb;
        }
        form.diag[e] += p00;
        form.diag[e + 1] += p11;
        form.off[e] += p01;
        form.elements[e] = {s, p00, p01, p11};
    }

    if (v.has_hard_core()) {
        std::size_t i = 0;
        while (i < n && r[i] < v.core_radius())
            ++i;
        if (i == n || r[i] != v.core_radius())
            throw Error("assemble_scattering_form: mesh must contain the core radius");
        form.first_free = i + 1; // phi vanishes on [0, r_core] inclusive
    }
    return form;
}

// Minimum of the form over profiles with phi = 1 at the last mesh node (and
// phi = 0 below first_free). The reduced tridiagonal system is solved by
// elimination; for v >= 0 it is positive definite, so a nonpositive pivot
// can only mean a broken assembly.
inline double minimize_quadratic_form(const QuadraticForm& form) {
    const std::size_t n = form.diag.size();
    if (n < 2 || form.off.size() != n - 1 || form.elements.size() != n - 1 || form.first_free >= n)
        throw Error("minimize_quadratic_form: malformed form");

    const std::size_t lo = form.first_free;
    const std::size_t m = n - 1 - lo; // unknowns lo .. n-2
    std::vector<double> phi(n, 0.0);
    phi[n - 1] = 1.0;

    if (m > 0) {
        std::vector<double> d(m), rhs(m, 0.0);
        for (std::size_t k = 0; k < m; ++k)
            d[k] = form.diag[lo + k];
        rhs[m - 1] = -form.off[n - 2];
        // forward elimination
        for (std::size_t k = 1; k < m; ++k) {
            if (!(d[k - 1] > 0.0))
                throw SingularSystem("minimize_quadratic_form: nonpositive pivot");
            const double w = form.off[lo + k - 1] / d[k - 1];
            d[k] -= w * form.off[lo + k - 1];
            rhs[k] -= w * rhs[k - 1];
        }
        if (!(d[m - 1] > 0.0))
            throw SingularSystem("minimize_quadratic_form: nonpositive pivot");
        phi[lo + m - 1] = rhs[m - 1] / d[m - 1];
        for (std::size_t k = m - 1; k-- > 0;)
            phi[lo + k] = (rhs[k] - form.off[lo + k] * phi[lo + k + 1]) / d[k];
    }
    return form(phi);
}

} // namespace bosegas
