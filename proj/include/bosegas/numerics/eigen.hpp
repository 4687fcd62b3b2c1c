#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bosegas/errors.hpp"

extern "C" {
void dsyevr_(const char* jobz, const char* range, const char* uplo, const int* n, double* a,
             const int* lda, const double* vl, const double* vu, const int* il, const int* iu,
             const double* abstol, int* m, double* w, double* z, const int* ldz, int* isuppz,
             double* work, const int* lwork, int* iwork, const int* liwork, int* info);
}

namespace bosegas {

// Dense real symmetric matrix, row-major. Symmetry makes the storage order
// irrelevant to the Fortran solver underneath.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a; // n*n entries

    explicit SymMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double frobenius() const {
        double s = 0.0;
        for (double x : a)
            s += x * x;
        return std::sqrt(s);
    }
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
};

// Lowest eigenpair of a dense symmetric matrix (LAPACK dsyevr, smallest
// index). Symmetry is checked on entry, the residual on exit.
inline EigenPair min_eigen_sym(const SymMatrix& m) {
    const std::size_t n = m.n;
    if (n == 0 || m.a.size() != n * n)
        throw Error("min_eigen_sym: malformed matrix");

    double maxabs = 0.0;
    for (double x : m.a)
        maxabs = std::max(maxabs, std::fabs(x));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, maxabs))
                throw NotSymmetric("min_eigen_sym: entry (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") breaks symmetry");

    std::vector<double> a = m.a; // dsyevr destroys its input
    const int in = static_cast<int>(n);
    const int il = 1, iu = 1;
    const double vl = 0.0, vu = 0.0, abstol = 0.0;
    int mfound = 0, info = 0;
    std::vector<double> w(n), z(n);
    std::vector<int> isuppz(2);
    int lwork = -1, liwork = -1;
    double work_query = 0.0;
    int iwork_query = 0;
    dsyevr_("V", "I", "U", &in, a.data(), &in, &vl, &vu, &il, &iu, &abstol, &mfound, w.data(),
            z.data(), &in, isuppz.data(), &work_query, &lwork, &iwork_query, &liwork, &info);
    if (info != 0)
        throw NoConvergence("min_eigen_sym: workspace query failed");
    lwork = static_cast<int>(work_query);
    liwork = iwork_query;
    std::vector<double> work(lwork);
    std::vector<int> iwork(liwork);
    dsyevr_("V", "I", "U", &in, a.data(), &in, &vl, &vu, &il, &iu, &abstol, &mfound, w.data(),
            z.data(), &in, isuppz.data(), work.data(), &lwork, iwork.data(), &liwork, &info);
    if (info != 0 || mfound < 1)
        throw NoConvergence("min_eigen_sym: dsyevr info " + std::to_string(info));

    EigenPair out;
    out.value = w[0];
    out.vector.assign(z.begin(), z.begin() + n);

    // residual check against the contract
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mx = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            mx += m(i, j) * out.vector[j];
        const double r = mx - out.value * out.vector[i];
        rnorm += r * r;
    }
    rnorm = std::sqrt(rnorm);
    if (rnorm > 1e-10 * std::max(1e-300, m.frobenius()))
        throw NoConvergence("min_eigen_sym: residual " + std::to_string(rnorm));
    return out;
}

} // namespace bosegas
