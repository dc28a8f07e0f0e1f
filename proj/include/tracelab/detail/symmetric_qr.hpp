#pragma once

// Householder tridiagonalization and implicit-shift QL for dense symmetric
// matrices. Templated on the scalar so the same code runs in long double as a
// precision oracle in the tests.
//
// The reduction runs from the last row upward and QL chases bulges from the
// bottom, so matrices whose large entries sit in the lower right corner (the
// Galerkin matrices here, with diagonal (pi n)^4) keep their grading and the
// small eigenvalues come out with close to relative accuracy.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab::detail {

template <typename Real>
struct DenseSym {
    std::size_t n = 0;
    std::vector<Real> a;  // row-major n x n
    Real& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    Real operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// In-place reduction. On return `z` holds Q (if want_q) with A = Q T Q^T,
/// d the diagonal of T and e[i] the coupling of rows i-1 and i (e[0] = 0).
template <typename Real>
void householder_tridiagonalize(DenseSym<Real>& z, std::vector<Real>& d, std::vector<Real>& e,
                                bool want_q) {
    using std::abs;
    using std::sqrt;
    const std::size_t n = z.n;
    d.assign(n, Real(0));
    e.assign(n, Real(0));
    if (n == 0) return;

    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        Real h = 0;
        // Entries strictly left of the subdiagonal; zero means the row is already reduced.
        Real below = 0;
        for (std::size_t k = 0; k < l; ++k) below += abs(z(i, k));
        if (l > 0 && below != Real(0)) {
            Real scale = below + abs(z(i, l));
            for (std::size_t k = 0; k < i; ++k) {
                z(i, k) /= scale;
                h += z(i, k) * z(i, k);
            }
            Real f = z(i, l);
            Real g = f >= Real(0) ? -sqrt(h) : sqrt(h);
            e[i] = scale * g;
            h -= f * g;
            z(i, l) = f - g;
            f = 0;
            for (std::size_t j = 0; j < i; ++j) {
                if (want_q) z(j, i) = z(i, j) / h;
                g = 0;
                for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                for (std::size_t k = j + 1; k < i; ++k) g += z(k, j) * z(i, k);
                e[j] = g / h;
                f += e[j] * z(i, j);
            }
            const Real hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) {
                f = z(i, j);
                e[j] = g = e[j] - hh * f;
                for (std::size_t k = 0; k <= j; ++k) z(j, k) -= (f * e[k] + g * z(i, k));
            }
        } else {
            e[i] = z(i, l);
            h = 0;
        }
        d[i] = h;
    }
    d[0] = 0;
    e[0] = 0;

    std::vector<Real> work;

    for (std::size_t i = 0; i < n; ++i) {
        if (want_q) {
            if (d[i] != Real(0)) {
                // g = z(i, 0:i) Z(0:i, 0:i), then Z(0:i, 0:i) -= z(0:i, i) g; row-wise.
                work.assign(i, Real(0));
                for (std::size_t k = 0; k < i; ++k) {
                    const Real zik = z(i, k);
                    const Real* zk = &z(k, 0);
                    for (std::size_t j = 0; j < i; ++j) work[j] += zik * zk[j];
                }
                for (std::size_t k = 0; k < i; ++k) {
                    const Real zki = z(k, i);
                    Real* zk = &z(k, 0);
                    for (std::size_t j = 0; j < i; ++j) zk[j] -= zki * work[j];
                }
            }
            d[i] = z(i, i);
            z(i, i) = 1;
            for (std::size_t j = 0; j < i; ++j) z(j, i) = z(i, j) = 0;
        } else {
            d[i] = z(i, i);
        }
    }
}

/// Implicit QL with Wilkinson-type shifts on the tridiagonal (d, e) where e[i]
/// couples i and i+1 (size n, last entry ignored). Eigenvalues overwrite d
/// (unsorted). If zt is non-null it holds the transposed basis (one basis
/// vector per row) and its rows are rotated along, so on return row k is the
/// eigenvector of d[k].
template <typename Real>
void implicit_ql(std::vector<Real>& d, std::vector<Real>& e, DenseSym<Real>* zt,
                 int max_iter_per_value = 50) {
    using std::abs;
    using std::hypot;
    const std::size_t n = d.size();
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0;
    const Real eps = std::numeric_limits<Real>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const Real dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter++ == max_iter_per_value)
                throw NumericError("implicit QL: no convergence for eigenvalue " + std::to_string(l) +
                                   " after " + std::to_string(max_iter_per_value) + " iterations");
            Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
            Real r = hypot(g, Real(1));
            g = d[m] - d[l] + e[l] / (g + (g >= Real(0) ? abs(r) : -abs(r)));
            Real s = 1, c = 1, p = 0;
            bool underflow = false;
            for (std::size_t ii = m; ii-- > l;) {
                Real f = s * e[ii];
                const Real b = c * e[ii];
                e[ii + 1] = (r = hypot(f, g));
                if (r == Real(0)) {
                    d[ii + 1] -= p;
                    e[m] = 0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[ii + 1] - p;
                r = (d[ii] - g) * s + Real(2) * c * b;
                d[ii + 1] = g + (p = s * r);
                g = c * r - b;
                if (zt != nullptr) {
                    Real* lo = &(*zt)(ii, 0);
                    Real* hi = &(*zt)(ii + 1, 0);
                    for (std::size_t k = 0; k < n; ++k) {
                        const Real t = hi[k];
                        hi[k] = s * lo[k] + c * t;
                        lo[k] = c * lo[k] - s * t;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0;
        } while (true);
    }
}

}  // namespace tracelab::detail
