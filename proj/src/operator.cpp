#include "tracelab/operator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tracelab/eigen.hpp"
#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(int N, const char* who) {
    if (N < 1) throw ArgumentError(std::string(who) + ": basis size N must be >= 1 (got " + std::to_string(N) + ")");
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::SecondOrder: return "SecondOrder";
        case OperatorKind::FourthOrder: return "FourthOrder";
        case OperatorKind::SquarePlusQ: return "SquarePlusQ";
    }
    return "?";
}

Matrix multiplication_matrix(const Coefficient& f, int N) {
    require_size(N, "multiplication_matrix");
    const CosineSeq c = cosine_coeffs(f, 2 * N);
    Matrix m(N);
    for (int i = 1; i <= N; ++i) {
        for (int j = i; j <= N; ++j) {
            const double v = c[j - i] - c[i + j];
            m(i - 1, j - 1) = v;
            m(j - 1, i - 1) = v;
        }
    }
    return m;
}

GalerkinMatrix assemble_h(const Coefficient& p, int N) {
    require_size(N, "assemble_h");
    GalerkinMatrix g{static_cast<std::size_t>(N), multiplication_matrix(p, N), OperatorKind::SecondOrder};
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) g.a(i - 1, j - 1) = -g.a(i - 1, j - 1);
    for (int n = 1; n <= N; ++n) {
        const double pn = kPi * n;
        g.a(n - 1, n - 1) += pn * pn;
    }
    return g;
}

GalerkinMatrix assemble_H(const Coefficient& p, const Coefficient& q, int N) {
    require_size(N, "assemble_H");
    const CosineSeq cp = cosine_coeffs(p, 2 * N);
    const CosineSeq cq = cosine_coeffs(q, 2 * N);
    GalerkinMatrix g{static_cast<std::size_t>(N), Matrix(N), OperatorKind::FourthOrder};
    const double pi2 = kPi * kPi;
    for (int m = 1; m <= N; ++m) {
        for (int n = m; n <= N; ++n) {
            double v = -2.0 * pi2 * m * n * (cp[n - m] + cp[m + n]) + (cq[n - m] - cq[m + n]);
            if (m == n) {
                const double pn2 = pi2 * n * n;
                v += pn2 * pn2;
            }
            g.a(m - 1, n - 1) = v;
            g.a(n - 1, m - 1) = v;
        }
    }
    return g;
}

HEigenbasis h_eigenbasis(const Coefficient& p, int n_pad) {
    require_size(n_pad, "h_eigenbasis");
    const GalerkinMatrix h = assemble_h(p, n_pad);
    auto dec = symmetric_eigen(h.a);
    rayleigh_refine(h.a, dec, static_cast<std::size_t>(n_pad / 2));
    return HEigenbasis{n_pad, std::move(dec.values), std::move(dec.vectors)};
}

GalerkinMatrix assemble_h2_plus_Q(const HEigenbasis& basis, const Coefficient& Q, int N) {
    require_size(N, "assemble_h2_plus_Q");
    if (basis.n_pad < 2 * N)
        throw ArgumentError("assemble_h2_plus_Q: padding N_pad = " + std::to_string(basis.n_pad) +
                            " must be >= 2N = " + std::to_string(2 * N));
    const int P = basis.n_pad;
    const Matrix mq = multiplication_matrix(Q, P);
    const Matrix& u = basis.vectors;

    // W = M_Q U[:, :N]  (P x N), then U[:, :N]^T W.
    std::vector<double> w(static_cast<std::size_t>(P) * N, 0.0);
    for (int i = 0; i < P; ++i) {
        auto mrow = mq.row(i);
        for (int k = 0; k < P; ++k) {
            const double mik = mrow[k];
            if (mik == 0.0) continue;
            auto urow = u.row(k);
            double* wi = w.data() + static_cast<std::size_t>(i) * N;
            for (int j = 0; j < N; ++j) wi[j] += mik * urow[j];
        }
    }
    GalerkinMatrix g{static_cast<std::size_t>(N), Matrix(N), OperatorKind::SquarePlusQ};
    for (int k = 0; k < P; ++k) {
        auto urow = u.row(k);
        const double* wk = w.data() + static_cast<std::size_t>(k) * N;
        for (int i = 0; i < N; ++i) {
            const double uki = urow[i];
            if (uki == 0.0) continue;
            auto grow = g.a.row(i);
            for (int j = 0; j < N; ++j) grow[j] += uki * wk[j];
        }
    }
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            const double v = 0.5 * (g.a(i, j) + g.a(j, i));
            g.a(i, j) = v;
            g.a(j, i) = v;
        }
        g.a(i, i) += basis.alpha[i] * basis.alpha[i];
    }
    return g;
}

GalerkinMatrix assemble_h2_plus_Q(const Coefficient& p, const Coefficient& Q, int N, int n_pad) {
    require_size(N, "assemble_h2_plus_Q");
    if (n_pad < 2 * N)
        throw ArgumentError("assemble_h2_plus_Q: padding N_pad = " + std::to_string(n_pad) +
                            " must be >= 2N = " + std::to_string(2 * N));
    return assemble_h2_plus_Q(h_eigenbasis(p, n_pad), Q, N);
}

OperatorSpec shifted_coefficients(const OperatorSpec& spec) {
    OperatorSpec out = spec;
    if (spec.tau == 0.0) return out;
    if (spec.scope == ShiftScope::All) {
        out.p = shift(spec.p, spec.tau);
        out.q = shift(spec.q, spec.tau);
    }
    out.Q = shift(spec.Q, spec.tau);
    return out;
}

GalerkinMatrix assemble_spec(const OperatorSpec& spec, int N) {
    const OperatorSpec s = shifted_coefficients(spec);
    switch (s.kind) {
        case OperatorKind::SecondOrder: return assemble_h(s.p, N);
        case OperatorKind::FourthOrder: return assemble_H(s.p, s.q + s.Q, N);
        case OperatorKind::SquarePlusQ: return assemble_h2_plus_Q(s.p, s.Q, N, 2 * N);
    }
    throw ArgumentError("assemble_spec: unknown operator kind");
}

}  // namespace tracelab
