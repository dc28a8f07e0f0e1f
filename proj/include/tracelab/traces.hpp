#pragma once

// Regularized trace sums: summands, closed-form right-hand sides, tail models,
// and the numerical checks built on them (historical-formula disputes,
// eigenvalue asymptotics, localization of large eigenvalues).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelab/coeffs.hpp"
#include "tracelab/eigen.hpp"
#include "tracelab/operator.hpp"

namespace tracelab {

/// Identifiers of the trace formulas. The second column is the regularized
/// series; see formula_statement() for the full identity.
enum class FormulaId {
    GLF,   // sum(alpha_n - (pi n)^2 + p0)                                   second order
    S01,   // sum(alpha_n^2 - ((pi n)^2 - p0)^2 - (P - p0^2)/2)               square of h
    TRF3,  // sum(mu_n - ((pi n)^2 - p0)^2 + (P + p0^2)/2), q0 = 0             fourth order
    TRS,   // sum(mu_n - (pi n)^4 + 2 p0 (pi n)^2), p constant, q0 = 0
    TRQ0,  // TRF3 with q = 0, endpoint form of the right side
    TR3,   // sum(lambda_n - mu_n - Q0), H + Q against H
    COR1,  // sum(nu_n - Q0 - alpha_n^2), h^2 + Q against h
    IPR1,  // TRF3 for the shifted family, right side in V(tau)
    IP2,   // COR1 for h^2 + Q(. + tau), Q0 = 0, right side -Q(tau)/2
};

std::string_view to_string(FormulaId id);
std::optional<FormulaId> formula_from_string(std::string_view name);
/// Human-readable statement of the identity being checked.
std::string_view formula_statement(FormulaId id);

enum class AccelMode { Fourier, Richardson, None };

std::string_view to_string(AccelMode mode);
std::optional<AccelMode> accel_mode_from_string(std::string_view name);

/// Coefficients a formula is evaluated for. tau/scope apply to IPR1 and IP2
/// (shifted families); other formulas require tau == 0.
struct TraceInputs {
    Coefficient p;
    Coefficient q;
    Coefficient Q;
    double tau = 0.0;
};

/// The spectra a summand consumes: `primary` is mu, alpha, lambda or nu;
/// `reference` is the unperturbed spectrum for the difference formulas
/// (TR3: mu, COR1/IP2: alpha) and unused otherwise.
struct FormulaSpectra {
    const Spectrum* primary = nullptr;
    const Spectrum* reference = nullptr;
};

/// Throws PreconditionError naming the hypothesis if `in` is not admissible.
void check_preconditions(FormulaId id, const TraceInputs& in);

/// Operator specs whose spectra the formula needs (primary, optional reference).
struct FormulaOperators {
    OperatorSpec primary;
    std::optional<OperatorSpec> reference;
};
FormulaOperators formula_operators(FormulaId id, const TraceInputs& in);

/// n-th regularized summand (n >= 1). Counterterms are expanded so that
/// (pi n)^4 cancels against mu_n before anything else is added.
double summand(FormulaId id, int n, const FormulaSpectra& spectra, const TraceInputs& in);

/// Closed-form right-hand side.
double rhs(FormulaId id, const TraceInputs& in);

/// Value the series is extrapolated to from partial sums S_1..S_K
/// (`partial[k-1]` = S_k). Requires K >= 8.
///   fourier:    S_K + fourier_tail + c * sum_{n>K} n^-2, where c is a
///               least-squares fit of (summand_n - leading model_n) n^2 over
///               n in [K/2, K]
///   richardson: 2 S_{2[K/2]} - S_{[K/2]}
///   none:       S_K
double tail_accelerate(FormulaId id, const std::vector<double>& partial, const TraceInputs& in, int K,
                       AccelMode mode);

/// Closed-form remainder sum_{n > K} of the leading summand model
/// (Fourier endpoint identity, or (P - p0^2)/(2 pi n)^2 for GLF).
double fourier_tail(FormulaId id, const TraceInputs& in, int K);

struct VerifyOptions {
    AccelMode mode = AccelMode::Fourier;
    /// Replace q by q - q0 for formulas that need a mean-free q instead of
    /// rejecting the input. Eigenvalues move by exactly -q0.
    bool recenter_q = false;
    /// Pass/fail tolerance on |gap|; default_tolerance(id) when unset.
    std::optional<double> tol;
    SpectrumOptions spectrum;
};

double default_tolerance(FormulaId id);

struct TraceReport {
    FormulaId formula = FormulaId::TRF3;
    AccelMode mode = AccelMode::Fourier;
    int basis_n = 0;
    int k_used = 0;
    std::vector<double> partial;  // S_1..S_K
    double accelerated = 0.0;
    double rhs = 0.0;
    double gap = 0.0;  // accelerated - rhs
    double rate_exponent = 0.0;  // slope of log|S_k - accelerated| vs log k; NaN if undefined
    double tol = 0.0;
    double q_shift = 0.0;  // q0 removed when recentering was requested
    std::string inputs_digest;

    bool pass() const;
    /// Accelerated value and gap had the series been truncated at k.
    double accelerated_at(int k, const TraceInputs& in) const;
};

/// Computes the spectra, partial sums, acceleration, right side and gap.
/// Throws RangeError if K exceeds the trust horizon of a spectrum.
TraceReport verify(FormulaId id, const TraceInputs& in, int N, int K, const VerifyOptions& options = {});

/// Same, from precomputed spectra (used by sweeps).
TraceReport verify_with_spectra(FormulaId id, const TraceInputs& in, const FormulaSpectra& spectra, int K,
                                const VerifyOptions& options = {});

/// Least-squares slope of log|S_k - target| against log k over k in [K/8, K/2].
double fit_rate_exponent(const std::vector<double>& partial, double target);

// ---------------------------------------------------------------------------
// Historical formulas

enum class DisputeVariant {
    DikiiTrfD1,      // zeta-function formula with P~ and +(p''(0)+p''(1))/8
    DikiiD2,         // later version under p^(2j-1)(0) = p^(2j-1)(1) = 0, sign -1/8
    SadovnichiiTrS,  // constant term q0 in the asymptotics of mu_n for H = h^2
};

std::string_view to_string(DisputeVariant v);
std::optional<DisputeVariant> dispute_from_string(std::string_view name);

struct DisputeReport {
    DisputeVariant variant = DisputeVariant::DikiiTrfD1;
    double computed_lhs = 0.0;
    double variant_rhs = 0.0;
    double paper_rhs = 0.0;  // value implied by the proven formulas
    double disagreement = 0.0;  // |variant_rhs - paper_rhs|
    double tol = 0.0;
    std::string verdict;  // "proven", "variant", "indistinguishable" or "neither"
};

struct DisputeOptions {
    double tol = 1e-2;
    SpectrumOptions spectrum;
};

/// Dikii variants: the regularized sum of alpha_n^2 for p with p0 = 0 and
/// vanishing odd derivatives at both ends (no sine modes). Sadovnichii: the
/// constant term of mu_n - (pi n)^4 + 2 p0 (pi n)^2 for H = (d^2 + p)^2,
/// assembled as the fourth-order operator with q = p'' + p^2.
DisputeReport dispute(DisputeVariant variant, const Coefficient& p, int N, int K,
                      const DisputeOptions& options = {});

// ---------------------------------------------------------------------------
// Asymptotics and localization

struct AsymReport {
    std::vector<double> residuals;  // r_1..r_K
    int n_min = 8;
    int k_max = 0;
    double fitted_C = 0.0;  // max_{n_min <= n <= K} n^2 |r_n|
};

/// r_n = mu_n - [((pi n)^2 - p0)^2 - (P + p0^2)/2 + q0 - V_cn] for a
/// fourth-order spec (q taken as q + Q).
AsymReport asym_residuals(const OperatorSpec& spec, int N, int K, int n_min = 8,
                          const SpectrumOptions& options = {});
AsymReport asym_residuals(const Spectrum& mu, const Coefficient& p, const Coefficient& q, int K, int n_min = 8);

struct LocalizationReport {
    int n0 = 0;                     // least threshold satisfying both conditions
    bool found = false;             // false if no threshold up to n_trusted works
    std::vector<int> window_counts;  // eigenvalues in {|l^{1/4} - pi n| < pi/4}, n = 1..n_trusted
    int disc_count = 0;             // eigenvalues in {|l| < pi^4 (n0 + 1/2)^4}
    std::vector<int> violations;    // n > n0 whose window does not hold exactly one eigenvalue
};

LocalizationReport localization(const Spectrum& s);

}  // namespace tracelab
