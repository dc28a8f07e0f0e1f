#pragma once

// Sweeps over shifted operator families and pointwise recovery of a
// coefficient from the trace identities of the shifted spectra.
//
//   target V, q:  fourth-order H(tau) with p, q shifted together (IPR1)
//   target Q:     h^2 + Q(. + tau) with h held fixed (IP2)
//   target p_second_order:  h(tau) with p shifted (GLF on the shifted p)

#include <optional>
#include <string_view>
#include <vector>

#include "tracelab/coeffs.hpp"
#include "tracelab/eigen.hpp"
#include "tracelab/operator.hpp"
#include "tracelab/traces.hpp"

namespace tracelab {

enum class SweepTarget { V, q, Q, p_second_order };

std::string_view to_string(SweepTarget t);
std::optional<SweepTarget> sweep_target_from_string(std::string_view name);

struct SweepOptions {
    AccelMode mode = AccelMode::Fourier;
    SpectrumOptions spectrum;
    /// Worker threads for independent grid points; 0 picks the hardware count.
    unsigned threads = 0;
};

struct SweepResult {
    SweepTarget target = SweepTarget::V;
    OperatorSpec base;  // unshifted template
    int N = 0;
    int K = 0;
    AccelMode mode = AccelMode::Fourier;

    std::vector<double> taus;         // j / grid_size
    std::vector<Spectrum> spectra;    // primary spectrum per tau
    std::optional<Spectrum> reference;  // fixed alpha_n (target Q only)
    std::vector<double> accelerated;  // accelerated left side of the identity per tau
    std::vector<double> recovered;    // recovered coefficient value per tau

    int n0 = 0;                     // largest localization threshold over the grid
    std::vector<double> sum_branch;  // sum_{n <= n0} of the primary eigenvalues per tau
    double wrap_discrepancy = 0.0;  // |accelerated(tau = 1) - accelerated(tau = 0)|
    Coefficient fit;                // trigonometric least-squares fit of `recovered`
};

/// Computes the shifted spectra on the grid and fills every field of the
/// result. Throws PreconditionError for non-periodic coefficients or a
/// nonzero mean where the identity needs zero mean.
SweepResult sweep(const OperatorSpec& base, SweepTarget target, int grid_size, int N, int K,
                  const SweepOptions& options = {});

/// V(tau) = -2 A(tau) - (||p||^2 - p0^2)/2, A the accelerated IPR1 left side.
std::vector<double> recover_V(const SweepResult& sr, double p0, double p_l2sq);

/// q(tau) = V(tau) + p''(tau)/2.
std::vector<double> recover_q(const SweepResult& sr, const Coefficient& p);

/// Q(tau) = -2 A(tau) for target Q; p(tau) = 2 A(tau) + p0 for p_second_order.
std::vector<double> recover_Q(const SweepResult& sr);

/// Least-squares fit by 1, cos(2 pi k t), sin(2 pi k t), k <= degree, on a
/// uniform grid of [0,1). Requires 2 * degree < values.size().
Coefficient fit_trigonometric(const std::vector<double>& values, int degree);

}  // namespace tracelab
