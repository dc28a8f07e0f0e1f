#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tracelab/matrix.hpp"
#include "tracelab/operator.hpp"

namespace tracelab {

/// T = basis_change^T A basis_change, with T tridiagonal.
/// offdiag[i] couples rows i and i+1.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;
    Matrix basis_change;
};

/// Householder reduction, last row first. Rows that are already reduced are
/// left untouched, so a tridiagonal input comes back unchanged with an
/// identity basis change.
Tridiagonal tridiagonalize(const Matrix& a, bool want_basis = true);

/// All eigenvalues of the symmetric tridiagonal matrix, ascending.
/// Throws NumericError if some eigenvalue needs more than 50 QL sweeps.
std::vector<double> tridiag_eigenvalues(std::span<const double> diag, std::span<const double> offdiag);

/// Cyclic Jacobi; independent cross-check for the QL path. Size <= 128.
std::vector<double> jacobi_eigenvalues(const Matrix& a);
inline constexpr std::size_t kJacobiMaxSize = 128;

/// Eigenvalues of a dense symmetric matrix (tridiagonalize + QL), ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k belongs to values[k]
};

EigenDecomposition symmetric_eigen(const Matrix& a);

/// Eigenvalues with the lowest `count` replaced by the Rayleigh quotients of
/// their computed eigenvectors (accumulated in extended precision). On the
/// graded Galerkin matrices this brings the low eigenvalues from an absolute
/// error of order eps*||A|| down to order eps*|lambda|.
std::vector<double> refined_eigenvalues(const Matrix& a, std::size_t count);

/// In-place variant: replaces values[0..count) by Rayleigh quotients of the
/// matching columns. Order is not re-established.
void rayleigh_refine(const Matrix& a, EigenDecomposition& dec, std::size_t count);

struct Spectrum {
    std::vector<double> vals;         // ascending, counted with multiplicity
    std::vector<double> est_abs_err;  // |val_n(N) - val_n(2N)| plus rounding floor
    int n_trusted = 0;
    int basis_n = 0;
    OperatorKind kind = OperatorKind::FourthOrder;

    /// 1-based access, matching the mathematical labelling.
    double operator()(int n) const { return vals.at(static_cast<std::size_t>(n - 1)); }
};

struct SpectrumOptions {
    /// Trust tolerance relative to (pi n)^4 (fourth order) or (pi n)^2 (second order).
    double tol_trust = 1e-6;
};

/// Solves at N and 2N; annotates the size-N eigenvalues with refinement
/// error estimates and the trust horizon. Requires N >= 8.
Spectrum spectrum(const OperatorSpec& spec, int N, const SpectrumOptions& options = {});

/// Same, from already assembled matrices at sizes N and 2N.
Spectrum spectrum_from_pair(const GalerkinMatrix& coarse, const GalerkinMatrix& fine,
                            const SpectrumOptions& options = {});

}  // namespace tracelab
