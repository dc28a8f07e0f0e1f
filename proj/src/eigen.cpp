#include "tracelab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "tracelab/detail/symmetric_qr.hpp"
#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

void require_finite(const Matrix& a, const char* who) {
    for (double v : a.raw())
        if (!std::isfinite(v)) throw NumericError(std::string(who) + ": non-finite matrix entry");
}

detail::DenseSym<double> to_dense(const Matrix& a) {
    detail::DenseSym<double> z;
    z.n = a.size();
    z.a.assign(a.raw().begin(), a.raw().end());
    return z;
}

double frobenius(const Matrix& a) {
    double s = 0.0;
    for (double v : a.raw()) s += v * v;
    return std::sqrt(s);
}

}  // namespace

Tridiagonal tridiagonalize(const Matrix& a, bool want_basis) {
    require_finite(a, "tridiagonalize");
    auto z = to_dense(a);
    std::vector<double> d, e;
    detail::householder_tridiagonalize(z, d, e, want_basis);
    Tridiagonal t;
    t.diag = std::move(d);
    t.offdiag.assign(e.size() > 0 ? e.size() - 1 : 0, 0.0);
    for (std::size_t i = 1; i < e.size(); ++i) t.offdiag[i - 1] = e[i];
    if (want_basis) {
        t.basis_change = Matrix(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) t.basis_change(i, j) = z(i, j);
    }
    return t;
}

std::vector<double> tridiag_eigenvalues(std::span<const double> diag, std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    if ((n == 0 && !offdiag.empty()) || (n > 0 && offdiag.size() + 1 != n))
        throw ArgumentError("tridiag_eigenvalues: offdiag must have size(diag) - 1 entries");
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    for (double v : d)
        if (!std::isfinite(v)) throw NumericError("tridiag_eigenvalues: non-finite entry");
    for (double v : e)
        if (!std::isfinite(v)) throw NumericError("tridiag_eigenvalues: non-finite entry");
    detail::implicit_ql<double>(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> jacobi_eigenvalues(const Matrix& a) {
    const std::size_t n = a.size();
    if (n > kJacobiMaxSize)
        throw ArgumentError("jacobi_eigenvalues: size " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kJacobiMaxSize));
    require_finite(a, "jacobi_eigenvalues");
    Matrix m = a;
    const double target = 1e-13 * frobenius(a);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_norm() > target) {
        if (++sweep > kMaxSweeps) throw NumericError("jacobi_eigenvalues: no convergence in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                m(p, q) = m(q, p) = 0.0;
            }
        }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = m(i, i);
    std::sort(vals.begin(), vals.end());
    return vals;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
    require_finite(a, "symmetric_eigenvalues");
    auto z = to_dense(a);
    std::vector<double> d, e;
    detail::householder_tridiagonalize(z, d, e, false);
    // QL wants e[i] coupling i and i+1.
    for (std::size_t i = 1; i < e.size(); ++i) e[i - 1] = e[i];
    detail::implicit_ql<double>(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

EigenDecomposition symmetric_eigen(const Matrix& a) {
    require_finite(a, "symmetric_eigen");
    const std::size_t n = a.size();
    auto z = to_dense(a);
    std::vector<double> d, e;
    detail::householder_tridiagonalize(z, d, e, true);
    for (std::size_t i = 1; i < e.size(); ++i) e[i - 1] = e[i];
    detail::DenseSym<double> zt{n, std::vector<double>(n * n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) zt(j, i) = z(i, j);
    detail::implicit_ql<double>(d, e, &zt);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = zt(order[k], i);
    }
    return out;
}

void rayleigh_refine(const Matrix& a, EigenDecomposition& dec, std::size_t count) {
    const std::size_t n = a.size();
    count = std::min(count, n);
    std::vector<double> x(n);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < n; ++i) x[i] = dec.vectors(i, k);
        long double num = 0.0L, den = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0.0) continue;
            auto r = a.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += r[j] * x[j];
            num += static_cast<long double>(x[i]) * s;
            den += static_cast<long double>(x[i]) * x[i];
        }
        dec.values[k] = static_cast<double>(num / den);
    }
}

std::vector<double> refined_eigenvalues(const Matrix& a, std::size_t count) {
    EigenDecomposition dec = symmetric_eigen(a);
    rayleigh_refine(a, dec, count);
    std::sort(dec.values.begin(), dec.values.end());
    return dec.values;
}

namespace {

double trust_scale(OperatorKind kind, int n) {
    const double pn = std::numbers::pi * n;
    return kind == OperatorKind::SecondOrder ? pn * pn : pn * pn * pn * pn;
}

}  // namespace

Spectrum spectrum_from_pair(const GalerkinMatrix& coarse, const GalerkinMatrix& fine,
                            const SpectrumOptions& options) {
    if (fine.n < coarse.n) throw ArgumentError("spectrum_from_pair: fine matrix smaller than coarse");
    const auto v_coarse = refined_eigenvalues(coarse.a, coarse.n);
    const auto v_fine = refined_eigenvalues(fine.a, coarse.n);

    Spectrum s;
    s.kind = coarse.kind;
    s.basis_n = static_cast<int>(coarse.n);
    s.vals = v_coarse;
    s.est_abs_err.resize(coarse.n);
    const double eps = std::numeric_limits<double>::epsilon();
    s.n_trusted = 0;
    bool prefix = true;
    for (std::size_t i = 0; i < coarse.n; ++i) {
        const int n = static_cast<int>(i) + 1;
        const double scale = trust_scale(coarse.kind, n);
        // Rounding floor of the eigenvalue itself, so that a refinement
        // difference that happens to cancel is not read as zero error.
        const double floor = 16.0 * eps * std::max(std::abs(v_coarse[i]), scale);
        s.est_abs_err[i] = std::abs(v_coarse[i] - v_fine[i]) + floor;
        if (prefix && s.est_abs_err[i] <= options.tol_trust * scale) s.n_trusted = n;
        else prefix = false;
    }
    return s;
}

Spectrum spectrum(const OperatorSpec& spec, int N, const SpectrumOptions& options) {
    if (N < 8) throw ArgumentError("spectrum: N must be >= 8 (got " + std::to_string(N) + ")");
    return spectrum_from_pair(assemble_spec(spec, N), assemble_spec(spec, 2 * N), options);
}

}  // namespace tracelab
