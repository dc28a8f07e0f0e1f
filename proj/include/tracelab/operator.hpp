#pragma once

// Galerkin matrices in the orthonormal sine basis s_n(x) = sqrt(2) sin(pi n x),
// n = 1..N. Every s_n satisfies y = y'' = 0 at both ends, so the boundary
// conditions of h and H hold exactly with no penalty terms.
//
// With c_k = int_0^1 f cos(pi k x):
//     <f s_m, s_n>   = c_{|m-n|} - c_{m+n}
//     <f s_m', s_n'> = pi^2 m n (c_{|m-n|} + c_{m+n})

#include <cstddef>
#include <string_view>
#include <vector>

#include "tracelab/coeffs.hpp"
#include "tracelab/matrix.hpp"

namespace tracelab {

enum class OperatorKind {
    SecondOrder,  // h = -d^2 - p
    FourthOrder,  // H = d^4 + 2 d p d + q  (+ Q when Q is set)
    SquarePlusQ,  // h^2 + Q
};

std::string_view to_string(OperatorKind kind);

struct GalerkinMatrix {
    std::size_t n = 0;
    Matrix a;
    OperatorKind kind = OperatorKind::FourthOrder;
};

/// Which coefficients a nonzero tau translates.
enum class ShiftScope {
    All,    // H_tau: p, q and Q are all shifted
    QOnly,  // h^2 + Q(. + tau) with h held fixed
};

struct OperatorSpec {
    OperatorKind kind = OperatorKind::FourthOrder;
    Coefficient p;
    Coefficient q;
    Coefficient Q;
    double tau = 0.0;
    ShiftScope scope = ShiftScope::All;
};

/// Multiplication operator <f s_m, s_n>, m,n = 1..N.
Matrix multiplication_matrix(const Coefficient& f, int N);

GalerkinMatrix assemble_h(const Coefficient& p, int N);
GalerkinMatrix assemble_H(const Coefficient& p, const Coefficient& q, int N);

/// Eigenpairs of the padded second-order matrix; columns of `vectors` are the
/// sine-basis coordinates of the eigenfunctions, sorted by eigenvalue.
struct HEigenbasis {
    int n_pad = 0;
    std::vector<double> alpha;
    Matrix vectors;
};

HEigenbasis h_eigenbasis(const Coefficient& p, int n_pad);

/// diag(alpha_n^2) + U^T M_Q U restricted to the leading N x N block.
GalerkinMatrix assemble_h2_plus_Q(const HEigenbasis& basis, const Coefficient& Q, int N);
GalerkinMatrix assemble_h2_plus_Q(const Coefficient& p, const Coefficient& Q, int N, int n_pad);

/// Applies the spec's shift, then dispatches. FourthOrder with a nonzero Q
/// assembles H + Q as assemble_H(p, q + Q). SquarePlusQ pads to 2N.
GalerkinMatrix assemble_spec(const OperatorSpec& spec, int N);

/// Coefficients of `spec` after the shift of its scope has been applied.
OperatorSpec shifted_coefficients(const OperatorSpec& spec);

}  // namespace tracelab
