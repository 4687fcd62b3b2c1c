#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "bosegas/errors.hpp"
#include "bosegas/numerics/eigen.hpp"

namespace bosegas {

// Scalar lower bound for the two-mode quadratic Hamiltonian
//   A (b+* b+ + b-* b-) + B (b+* b-* + b+ b-) + kappa (b+* + b-) + conj(kappa) (b+ + b-*)
//   >= -1/2 (A - sqrt(A^2 - B^2)) ([b+,b+*] + [b-,b-*]) - 2|kappa|^2 / (A + B),
// valid whenever A > 0 and -A < B <= A. The caller supplies the commutator
// sum (2 for canonical modes). A - sqrt(A^2-B^2) is evaluated in the
// rationalized form B^2/(A + sqrt(A^2-B^2)) to avoid cancellation at |B| << A.
inline double bog_bound(double A, double B, std::complex<double> kappa,
                        double commutator_sum = 2.0) {
    if (!(A > 0.0) || !(-A < B) || !(B <= A))
        throw InvalidCoefficients("bog_bound: need A > 0 and -A < B <= A");
    const double root = std::sqrt((A - B) * (A + B));
    const double deficit = B * B / (A + root);
    return -0.5 * deficit * commutator_sum - 2.0 * std::norm(kappa) / (A + B);
}

struct FockOracleSpec {
    double A = 1.0;
    double B = 0.0;
    std::complex<double> kappa = 0.0;
    std::size_t n_max = 40;
    // re-solve at doubled truncation and insist the value has settled
    bool check_convergence = false;

    void validate() const {
        if (!(A > 0.0) || !(-A < B) || !(B <= A))
            throw InvalidCoefficients("fock_oracle: need A > 0 and -A < B <= A");
        if (n_max < 2)
            throw InvalidCoefficients("fock_oracle: n_max must be at least 2");
    }
};

namespace detail {

// Dense assembly of the two-mode Hamiltonian on occupations 0..n_max per
// mode. For complex kappa the Hermitian matrix H = S + iK is embedded as the
// real symmetric [[S, -K], [K, S]], which has the same spectrum (doubled).
inline double fock_ground_energy(const FockOracleSpec& spec) {
    const std::size_t d = spec.n_max + 1;
    const std::size_t dim = d * d;
    const bool complex_kappa = spec.kappa.imag() != 0.0;
    const std::size_t side = complex_kappa ? 2 * dim : dim;
    const double kr = spec.kappa.real();
    const double ki = spec.kappa.imag();

    SymMatrix m(side);
    auto add_sym = [&](std::size_t i, std::size_t j, double val) {
        m(i, j) += val;
        if (i != j)
            m(j, i) += val;
        if (complex_kappa) {
            m(i + dim, j + dim) += val;
            if (i != j)
                m(j + dim, i + dim) += val;
        }
    };
    // antisymmetric imaginary part: H(i,j) = -i*val, H(j,i) = +i*val
    auto add_imag = [&](std::size_t i, std::size_t j, double val) {
        m(i + dim, j) += val;
        m(j, i + dim) += val;
        m(j + dim, i) -= val;
        m(i, j + dim) -= val;
    };

    auto idx = [d](std::size_t np, std::size_t nm) { return np * d + nm; };
    for (std::size_t np = 0; np < d; ++np) {
        for (std::size_t nm = 0; nm < d; ++nm) {
            const std::size_t i = idx(np, nm);
            add_sym(i, i, spec.A * static_cast<double>(np + nm));
            if (np + 1 < d && nm + 1 < d) {
                const double amp = spec.B * std::sqrt(static_cast<double>((np + 1) * (nm + 1)));
                add_sym(idx(np + 1, nm + 1), i, amp);
            }
            if (np + 1 < d) { // kappa b+*
                const double s = std::sqrt(static_cast<double>(np + 1));
                add_sym(idx(np + 1, nm), i, kr * s);
                if (complex_kappa)
                    add_imag(idx(np + 1, nm), i, ki * s);
            }
            if (nm > 0) { // kappa b-
                const double s = std::sqrt(static_cast<double>(nm));
                add_sym(idx(np, nm - 1), i, kr * s);
                if (complex_kappa)
                    add_imag(idx(np, nm - 1), i, ki * s);
            }
        }
    }
    return min_eigen_sym(m).value;
}

} // namespace detail

// Ground energy of the truncated two-mode Hamiltonian. Decreasing in n_max
// (larger spaces only add variational freedom), and never below
// bog_bound(A, B, kappa, 2) up to solver precision.
inline double fock_oracle(const FockOracleSpec& spec) {
    spec.validate();
    const double e = detail::fock_ground_energy(spec);
    if (spec.check_convergence) {
        FockOracleSpec doubled = spec;
        doubled.n_max = 2 * spec.n_max;
        doubled.check_convergence = false;
        const double e2 = detail::fock_ground_energy(doubled);
        if (std::fabs(e2 - e) > 1e-8 * (1.0 + std::fabs(e2)))
            throw TruncationNotConverged("fock_oracle: doubling n_max moved the ground energy");
        return e2;
    }
    return e;
}

} // namespace bosegas
