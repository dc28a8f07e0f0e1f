#include "tracelab/traces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr double kMeanTol = 1e-10;

struct NamedFormula {
    FormulaId id;
    std::string_view name;
    std::string_view statement;
};

constexpr std::array<NamedFormula, 9> kFormulas{{
    {FormulaId::GLF, "GLF", "sum_n (alpha_n - (pi n)^2 + p0) = (p(0) + p(1))/4 - p0/2"},
    {FormulaId::S01, "S01",
     "sum_n (alpha_n^2 - ((pi n)^2 - p0)^2 - (P - p0^2)/2) = (P + p0^2)/4 - (p(0)^2 + p(1)^2)/4 - (p''(0) + "
     "p''(1))/8"},
    {FormulaId::TRF3, "TRF3",
     "sum_n (mu_n - ((pi n)^2 - p0)^2 + (P + p0^2)/2) = -(P - p0^2 + V(0) + V(1))/4, V = q - p''/2, q0 = 0"},
    {FormulaId::TRS, "TRS", "sum_n (mu_n - (pi n)^4 + 2 p0 (pi n)^2) = -(q(0) + q(1))/4, p constant, q0 = 0"},
    {FormulaId::TRQ0, "TRQ0",
     "sum_n (mu_n - ((pi n)^2 - p0)^2 + (P + p0^2)/2) = -(P - p0^2)/4 + (p''(0) + p''(1))/8, q = 0"},
    {FormulaId::TR3, "TR3", "sum_n (lambda_n - mu_n - Q0) = -(Q(0) + Q(1) - 2 Q0)/4"},
    {FormulaId::COR1, "COR1", "sum_n (nu_n - Q0 - alpha_n^2) = -(Q(0) + Q(1) - 2 Q0)/4"},
    {FormulaId::IPR1, "IPR1",
     "sum_n (mu_n(tau) - ((pi n)^2 - p0)^2 + (P + p0^2)/2) = -(P - p0^2 + 2 V(tau))/4, V = q - p''/2"},
    {FormulaId::IP2, "IP2", "sum_n (nu_n(tau) - alpha_n^2) = -Q(tau)/2, Q0 = 0"},
}};

const NamedFormula& named(FormulaId id) {
    for (const auto& f : kFormulas)
        if (f.id == id) return f;
    throw ArgumentError("unknown formula id");
}

/// Neumaier's variant of compensated summation, in extended precision.
class CompensatedSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

double wrap_unit(double tau) {
    double t = tau - std::floor(tau);
    return t >= 1.0 ? 0.0 : t;
}

bool is_shifted_family(FormulaId id) { return id == FormulaId::IPR1 || id == FormulaId::IP2; }

bool needs_mean_free_q(FormulaId id) {
    return id == FormulaId::TRF3 || id == FormulaId::TRS || id == FormulaId::IPR1;
}

bool no_sine_modes(const Coefficient& f) {
    for (int j = 1; j <= f.degree(); ++j)
        if (f.w(j) != 0.0) return false;
    return true;
}

bool is_constant(const Coefficient& f) {
    for (int j = 1; j <= f.degree(); ++j)
        if (f.u(j) != 0.0 || f.w(j) != 0.0) return false;
    return true;
}

[[noreturn]] void fail(FormulaId id, const std::string& what) {
    throw PreconditionError(std::string(to_string(id)) + ": " + what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Coefficient shifted(const Coefficient& f, double tau) { return tau == 0.0 ? f : shift(f, tau); }

/// sum_{n > K} int f cos(2 pi n x), from the closed form of the full series.
double cos2n_remainder(const Coefficient& f, int K) {
    const CosineSeq c = cosine_coeffs(f, 2 * K);
    CompensatedSum head;
    for (int n = 1; n <= K; ++n) head.add(c.cos2n(static_cast<std::size_t>(n)));
    return cos2n_series_sum(f) - static_cast<double>(head.value());
}

/// sum_{n > K} 1/n^2.
double inverse_square_tail(int K) {
    CompensatedSum head;
    for (int n = 1; n <= K; ++n) head.add(1.0L / (static_cast<long double>(n) * n));
    return static_cast<double>(static_cast<long double>(kPi * kPi / 6.0) - head.value());
}

/// Leading terms of the summands that the closed-form Fourier remainder
/// accounts for, n = 1..K.
std::vector<double> model_summands(FormulaId id, const TraceInputs& in, int K) {
    std::vector<double> m(static_cast<std::size_t>(K), 0.0);
    auto fill_cos2n = [&](const Coefficient& f, double scale) {
        const CosineSeq c = cosine_coeffs(f, 2 * K);
        for (int n = 1; n <= K; ++n) m[static_cast<std::size_t>(n - 1)] += scale * c.cos2n(static_cast<std::size_t>(n));
    };
    switch (id) {
        case FormulaId::GLF: {
            const double p0 = functionals(in.p).mean;
            const double a = (big_P(in.p) - p0 * p0) / (4.0 * kPi * kPi);
            for (int n = 1; n <= K; ++n) m[static_cast<std::size_t>(n - 1)] = a / (static_cast<double>(n) * n);
            break;
        }
        case FormulaId::S01:
            fill_cos2n(derivative(in.p, 2), -0.5);
            fill_cos2n(multiply(in.p, in.p), -1.0);
            break;
        case FormulaId::TRF3:
        case FormulaId::TRS:
        case FormulaId::TRQ0:
        case FormulaId::IPR1:
            fill_cos2n(shifted(build_V(in.p, in.q), id == FormulaId::IPR1 ? in.tau : 0.0), -1.0);
            break;
        case FormulaId::TR3:
        case FormulaId::COR1:
        case FormulaId::IP2: fill_cos2n(shifted(in.Q, id == FormulaId::IP2 ? in.tau : 0.0), -1.0); break;
    }
    return m;
}

/// Least-squares c in (summand_n - model_n) ~ c / n^2 over n in [K/2, K].
double residual_inverse_square_coefficient(FormulaId id, const std::vector<double>& partial, const TraceInputs& in,
                                           int K) {
    const int lo = std::max(2, K / 2);
    if (K - lo < 1) return 0.0;
    const std::vector<double> model = model_summands(id, in, K);
    long double num = 0.0L, den = 0.0L;
    for (int n = lo; n <= K; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        const long double term = static_cast<long double>(partial[i]) - partial[i - 1];
        const long double x = 1.0L / (static_cast<long double>(n) * n);
        num += (term - model[i]) * x;
        den += x * x;
    }
    return static_cast<double>(num / den);
}

double accelerate_unchecked(FormulaId id, const std::vector<double>& partial, const TraceInputs& in, int K,
                            AccelMode mode) {
    const double sk = partial[static_cast<std::size_t>(K - 1)];
    switch (mode) {
        case AccelMode::None: return sk;
        case AccelMode::Richardson: {
            const int m = K / 2;
            if (m < 1) return sk;
            return 2.0 * partial[static_cast<std::size_t>(2 * m - 1)] - partial[static_cast<std::size_t>(m - 1)];
        }
        case AccelMode::Fourier:
            return sk + fourier_tail(id, in, K) +
                   residual_inverse_square_coefficient(id, partial, in, K) * inverse_square_tail(K);
    }
    return sk;
}

}  // namespace

std::string_view to_string(FormulaId id) { return named(id).name; }

std::optional<FormulaId> formula_from_string(std::string_view name) {
    for (const auto& f : kFormulas)
        if (f.name == name) return f.id;
    return std::nullopt;
}

std::string_view formula_statement(FormulaId id) { return named(id).statement; }

std::string_view to_string(AccelMode mode) {
    switch (mode) {
        case AccelMode::Fourier: return "fourier";
        case AccelMode::Richardson: return "richardson";
        case AccelMode::None: return "none";
    }
    return "?";
}

std::optional<AccelMode> accel_mode_from_string(std::string_view name) {
    if (name == "fourier") return AccelMode::Fourier;
    if (name == "richardson") return AccelMode::Richardson;
    if (name == "none") return AccelMode::None;
    return std::nullopt;
}

void check_preconditions(FormulaId id, const TraceInputs& in) {
    if (!is_shifted_family(id) && in.tau != 0.0)
        fail(id, "a shift tau applies only to the shifted families IPR1 and IP2");
    const bool second_order = id == FormulaId::GLF || id == FormulaId::S01;
    const bool square_family = id == FormulaId::COR1 || id == FormulaId::IP2;
    if ((second_order || square_family) && !in.q.is_zero())
        fail(id, "q must be zero (the operator is built from h alone)");
    if ((second_order || id == FormulaId::TRF3 || id == FormulaId::TRS || id == FormulaId::TRQ0 ||
         id == FormulaId::IPR1) &&
        !in.Q.is_zero())
        fail(id, "Q must be zero; use TR3 or COR1 for a perturbation Q");

    const double q0 = functionals(in.q).mean;
    switch (id) {
        case FormulaId::GLF:
        case FormulaId::S01:
        case FormulaId::TR3:
        case FormulaId::COR1: break;
        case FormulaId::TRF3:
            if (std::abs(q0) > kMeanTol)
                fail(id, "q must have zero mean (q in H_2^0), got q0 = " + fmt(q0) + "; recentering is available");
            break;
        case FormulaId::TRS:
            if (!is_constant(in.p)) fail(id, "p must be constant");
            if (std::abs(q0) > kMeanTol)
                fail(id, "q must have zero mean (q in H_2^0), got q0 = " + fmt(q0) + "; recentering is available");
            break;
        case FormulaId::TRQ0:
            if (!in.q.is_zero()) fail(id, "q must be identically zero");
            break;
        case FormulaId::IPR1:
            if (!in.p.is_one_periodic() || !in.q.is_one_periodic())
                fail(id, "p and q must be 1-periodic (odd-index amplitudes zero)");
            if (std::abs(q0) > kMeanTol)
                fail(id, "q must have zero mean (q in H_2^0), got q0 = " + fmt(q0) + "; recentering is available");
            break;
        case FormulaId::IP2: {
            if (!in.Q.is_one_periodic()) fail(id, "Q must be 1-periodic (odd-index amplitudes zero)");
            const double Q0 = functionals(in.Q).mean;
            if (std::abs(Q0) > kMeanTol) fail(id, "Q must have zero mean, got Q0 = " + fmt(Q0));
            break;
        }
    }
}

FormulaOperators formula_operators(FormulaId id, const TraceInputs& in) {
    auto make = [&](OperatorKind kind) {
        OperatorSpec s;
        s.kind = kind;
        s.p = in.p;
        if (kind == OperatorKind::FourthOrder) s.q = in.q;
        return s;
    };
    FormulaOperators ops;
    switch (id) {
        case FormulaId::GLF:
        case FormulaId::S01: ops.primary = make(OperatorKind::SecondOrder); break;
        case FormulaId::TRF3:
        case FormulaId::TRS:
        case FormulaId::TRQ0: ops.primary = make(OperatorKind::FourthOrder); break;
        case FormulaId::IPR1:
            ops.primary = make(OperatorKind::FourthOrder);
            ops.primary.tau = in.tau;
            ops.primary.scope = ShiftScope::All;
            break;
        case FormulaId::TR3:
            ops.primary = make(OperatorKind::FourthOrder);
            ops.primary.Q = in.Q;
            ops.reference = make(OperatorKind::FourthOrder);
            break;
        case FormulaId::COR1:
        case FormulaId::IP2:
            ops.primary = make(OperatorKind::SquarePlusQ);
            ops.primary.Q = in.Q;
            ops.primary.tau = in.tau;
            ops.primary.scope = ShiftScope::QOnly;
            ops.reference = make(OperatorKind::SecondOrder);
            break;
    }
    return ops;
}

double summand(FormulaId id, int n, const FormulaSpectra& spectra, const TraceInputs& in) {
    if (n < 1) throw ArgumentError("summand: n must be >= 1");
    if (spectra.primary == nullptr) throw ArgumentError("summand: primary spectrum missing");
    const bool needs_reference = id == FormulaId::TR3 || id == FormulaId::COR1 || id == FormulaId::IP2;
    if (needs_reference && spectra.reference == nullptr)
        throw ArgumentError(std::string("summand: ") + std::string(to_string(id)) + " needs a reference spectrum");

    const long double x = (*spectra.primary)(n);
    const long double pn2 = (kPiL * n) * (kPiL * n);
    const long double p0 = functionals(in.p).mean;
    switch (id) {
        case FormulaId::GLF: return static_cast<double>(x - pn2 + p0);
        case FormulaId::S01: {
            const long double P = big_P(in.p);
            return static_cast<double>(x * x - pn2 * pn2 + 2 * p0 * pn2 - p0 * p0 - (P - p0 * p0) / 2);
        }
        case FormulaId::TRF3:
        case FormulaId::TRQ0:
        case FormulaId::IPR1: {
            const long double P = big_P(in.p);
            return static_cast<double>(x - pn2 * pn2 + 2 * p0 * pn2 - p0 * p0 + (P + p0 * p0) / 2);
        }
        case FormulaId::TRS: return static_cast<double>(x - pn2 * pn2 + 2 * p0 * pn2);
        case FormulaId::TR3:
        case FormulaId::COR1:
        case FormulaId::IP2: {
            const long double Q0 = functionals(in.Q).mean;
            long double ref = (*spectra.reference)(n);
            if (id != FormulaId::TR3) ref *= ref;
            return static_cast<double>(x - ref - Q0);
        }
    }
    throw ArgumentError("summand: unknown formula");
}

double rhs(FormulaId id, const TraceInputs& in) {
    const Functionals fp = functionals(in.p);
    const double p0 = fp.mean;
    switch (id) {
        case FormulaId::GLF: return (fp.end0 + fp.end1) / 4.0 - p0 / 2.0;
        case FormulaId::S01: {
            const double P = big_P(in.p);
            return (P + p0 * p0) / 4.0 - (fp.end0 * fp.end0 + fp.end1 * fp.end1) / 4.0 - (fp.d2_0 + fp.d2_1) / 8.0;
        }
        case FormulaId::TRF3: {
            const Functionals fv = functionals(build_V(in.p, in.q));
            return -(big_P(in.p) - p0 * p0 + fv.end0 + fv.end1) / 4.0;
        }
        case FormulaId::TRS: {
            const Functionals fq = functionals(in.q);
            return -(fq.end0 + fq.end1) / 4.0;
        }
        case FormulaId::TRQ0: {
            const double P = (fp.d1_1 - fp.d1_0) + fp.l2sq;
            return -(P - p0 * p0) / 4.0 + (fp.d2_0 + fp.d2_1) / 8.0;
        }
        case FormulaId::TR3:
        case FormulaId::COR1: {
            const Functionals fQ = functionals(in.Q);
            return -(fQ.end0 + fQ.end1 - 2.0 * fQ.mean) / 4.0;
        }
        case FormulaId::IPR1: {
            const double v_tau = evaluate(build_V(in.p, in.q), wrap_unit(in.tau));
            return -(fp.l2sq - p0 * p0 + 2.0 * v_tau) / 4.0;
        }
        case FormulaId::IP2: return -evaluate(in.Q, wrap_unit(in.tau)) / 2.0;
    }
    throw ArgumentError("rhs: unknown formula");
}

double fourier_tail(FormulaId id, const TraceInputs& in, int K) {
    if (K < 1) throw ArgumentError("fourier_tail: K must be >= 1");
    switch (id) {
        case FormulaId::GLF: {
            const double p0 = functionals(in.p).mean;
            return (big_P(in.p) - p0 * p0) / (4.0 * kPi * kPi) * inverse_square_tail(K);
        }
        case FormulaId::S01: {
            const Coefficient p = in.p;
            return -0.5 * cos2n_remainder(derivative(p, 2), K) - cos2n_remainder(multiply(p, p), K);
        }
        case FormulaId::TRF3:
        case FormulaId::TRS:
        case FormulaId::TRQ0:
        case FormulaId::IPR1: {
            const double tau = id == FormulaId::IPR1 ? in.tau : 0.0;
            return -cos2n_remainder(shifted(build_V(in.p, in.q), tau), K);
        }
        case FormulaId::TR3:
        case FormulaId::COR1:
        case FormulaId::IP2: {
            const double tau = id == FormulaId::IP2 ? in.tau : 0.0;
            return -cos2n_remainder(shifted(in.Q, tau), K);
        }
    }
    throw ArgumentError("fourier_tail: unknown formula");
}

double tail_accelerate(FormulaId id, const std::vector<double>& partial, const TraceInputs& in, int K,
                       AccelMode mode) {
    if (K < 8) throw ArgumentError("tail_accelerate: K must be >= 8 (got " + std::to_string(K) + ")");
    if (static_cast<std::size_t>(K) > partial.size())
        throw ArgumentError("tail_accelerate: only " + std::to_string(partial.size()) + " partial sums for K = " +
                            std::to_string(K));
    return accelerate_unchecked(id, partial, in, K, mode);
}

double default_tolerance(FormulaId id) {
    switch (id) {
        case FormulaId::S01:
        case FormulaId::TRF3:
        case FormulaId::TRQ0:
        case FormulaId::IPR1: return 1e-2;
        default: return 1e-3;
    }
}

bool TraceReport::pass() const { return std::isfinite(gap) && std::abs(gap) <= tol; }

double TraceReport::accelerated_at(int k, const TraceInputs& in) const {
    if (k < 1 || static_cast<std::size_t>(k) > partial.size())
        throw ArgumentError("accelerated_at: k out of range");
    return accelerate_unchecked(formula, partial, in, k, mode);
}

double fit_rate_exponent(const std::vector<double>& partial, double target) {
    const int K = static_cast<int>(partial.size());
    const int lo = std::max(1, K / 8), hi = K / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    const double floor = 1e-14 * std::max(1.0, std::abs(target));
    for (int k = lo; k <= hi; ++k) {
        const double d = std::abs(partial[static_cast<std::size_t>(k - 1)] - target);
        if (!(d > floor)) continue;
        const double x = std::log(static_cast<double>(k)), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 3) return std::numeric_limits<double>::quiet_NaN();
    const double den = m * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / den;
}

namespace {

void require_trusted(const Spectrum& s, int K, const char* which) {
    if (K > s.n_trusted)
        throw RangeError(std::string("K = ") + std::to_string(K) + " exceeds the trusted range of the " + which +
                         " spectrum (n_trusted = " + std::to_string(s.n_trusted) +
                         " at N = " + std::to_string(s.basis_n) + "); increase N or lower K");
}

std::string digest(const TraceInputs& in) {
    std::ostringstream os;
    os << "p=" << in.p.describe() << "; q=" << in.q.describe() << "; Q=" << in.Q.describe();
    if (in.tau != 0.0) os << "; tau=" << in.tau;
    return os.str();
}

}  // namespace

TraceReport verify_with_spectra(FormulaId id, const TraceInputs& in, const FormulaSpectra& spectra, int K,
                                const VerifyOptions& options) {
    if (K < 8) throw ArgumentError("verify: K must be >= 8 (got " + std::to_string(K) + ")");
    check_preconditions(id, in);
    if (spectra.primary == nullptr) throw ArgumentError("verify: primary spectrum missing");
    require_trusted(*spectra.primary, K, "primary");
    if (spectra.reference != nullptr) require_trusted(*spectra.reference, K, "reference");

    TraceReport r;
    r.formula = id;
    r.mode = options.mode;
    r.basis_n = spectra.primary->basis_n;
    r.k_used = K;
    r.tol = options.tol.value_or(default_tolerance(id));
    r.inputs_digest = digest(in);
    r.partial.reserve(static_cast<std::size_t>(K));
    CompensatedSum s;
    for (int n = 1; n <= K; ++n) {
        s.add(summand(id, n, spectra, in));
        r.partial.push_back(static_cast<double>(s.value()));
    }
    r.accelerated = tail_accelerate(id, r.partial, in, K, options.mode);
    r.rhs = rhs(id, in);
    r.gap = r.accelerated - r.rhs;
    r.rate_exponent = fit_rate_exponent(r.partial, r.accelerated);
    return r;
}

TraceReport verify(FormulaId id, const TraceInputs& in, int N, int K, const VerifyOptions& options) {
    TraceInputs work = in;
    double q_shift = 0.0;
    if (options.recenter_q && needs_mean_free_q(id)) {
        q_shift = functionals(in.q).mean;
        work.q = in.q - Coefficient::constant(q_shift);
    }
    check_preconditions(id, work);
    const FormulaOperators ops = formula_operators(id, work);
    const Spectrum primary = spectrum(ops.primary, N, options.spectrum);
    std::optional<Spectrum> reference;
    if (ops.reference) reference = spectrum(*ops.reference, N, options.spectrum);
    FormulaSpectra spectra{&primary, reference ? &*reference : nullptr};
    TraceReport r = verify_with_spectra(id, work, spectra, K, options);
    r.q_shift = q_shift;
    return r;
}

// ---------------------------------------------------------------------------

std::string_view to_string(DisputeVariant v) {
    switch (v) {
        case DisputeVariant::DikiiTrfD1: return "DikiiTrfD1";
        case DisputeVariant::DikiiD2: return "DikiiD2";
        case DisputeVariant::SadovnichiiTrS: return "SadovnichiiTrS";
    }
    return "?";
}

std::optional<DisputeVariant> dispute_from_string(std::string_view name) {
    for (auto v : {DisputeVariant::DikiiTrfD1, DisputeVariant::DikiiD2, DisputeVariant::SadovnichiiTrS})
        if (to_string(v) == name) return v;
    return std::nullopt;
}

namespace {

std::string verdict_of(double lhs, double variant, double paper, double tol) {
    const bool v = std::abs(lhs - variant) <= tol;
    const bool p = std::abs(lhs - paper) <= tol;
    if (v && p) return "indistinguishable";
    if (p) return "proven";
    if (v) return "variant";
    return "neither";
}

/// Least-squares fit t_n = A + B/n^2 over n in [lo, hi]; returns A.
double extrapolate_inverse_square(const std::vector<double>& t, int lo, int hi) {
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (int n = lo; n <= hi; ++n) {
        const double x = 1.0 / (static_cast<double>(n) * n);
        const double y = t[static_cast<std::size_t>(n - 1)];
        s1 += 1;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    const double den = s1 * sxx - sx * sx;
    return (sxx * sy - sx * sxy) / den;
}

}  // namespace

DisputeReport dispute(DisputeVariant variant, const Coefficient& p, int N, int K, const DisputeOptions& options) {
    if (K < 8) throw ArgumentError("dispute: K must be >= 8 (got " + std::to_string(K) + ")");
    DisputeReport r;
    r.variant = variant;
    r.tol = options.tol;
    const Functionals fp = functionals(p);
    const double p0 = fp.mean;

    if (variant == DisputeVariant::SadovnichiiTrS) {
        OperatorSpec spec;
        spec.kind = OperatorKind::FourthOrder;
        spec.p = p;
        spec.q = derivative(p, 2) + multiply(p, p);
        const Spectrum mu = spectrum(spec, N, options.spectrum);
        require_trusted(mu, K, "fourth-order");
        std::vector<double> t(static_cast<std::size_t>(K));
        for (int n = 1; n <= K; ++n) {
            const long double pn2 = (kPiL * n) * (kPiL * n);
            t[static_cast<std::size_t>(n - 1)] = static_cast<double>(mu(n) - pn2 * pn2 + 2 * p0 * pn2);
        }
        r.computed_lhs = extrapolate_inverse_square(t, std::max(1, K / 2), K);
        r.variant_rhs = functionals(spec.q).mean;
        r.paper_rhs = (big_P(p) + p0 * p0) / 2.0;
    } else {
        if (std::abs(p0) > kMeanTol)
            throw PreconditionError(std::string(to_string(variant)) + ": p must have zero mean, got p0 = " + fmt(p0));
        if (!no_sine_modes(p))
            throw PreconditionError(std::string(to_string(variant)) +
                                    ": odd derivatives of p must vanish at both ends (no sine modes)");
        TraceInputs in;
        in.p = p;
        OperatorSpec spec;
        spec.kind = OperatorKind::SecondOrder;
        spec.p = p;
        const Spectrum alpha = spectrum(spec, N, options.spectrum);
        const TraceReport tr = verify_with_spectra(FormulaId::S01, in, FormulaSpectra{&alpha, nullptr}, K);
        r.computed_lhs = tr.accelerated;
        r.paper_rhs = tr.rhs;
        const double ends_sq = (fp.end0 * fp.end0 + fp.end1 * fp.end1) / 4.0;
        const double d2 = (fp.d2_0 + fp.d2_1) / 8.0;
        if (variant == DisputeVariant::DikiiTrfD1) {
            const double p_tilde = fp.l2sq - 4.0 * p0 * p0 + (fp.d1_1 - fp.d1_0) / 3.0;
            r.variant_rhs = (p_tilde + 2.0 * p0 * p0) / 4.0 + d2 - ends_sq;
        } else {
            r.variant_rhs = fp.l2sq / 4.0 - d2 - ends_sq;
        }
    }
    r.disagreement = std::abs(r.variant_rhs - r.paper_rhs);
    r.verdict = verdict_of(r.computed_lhs, r.variant_rhs, r.paper_rhs, r.tol);
    return r;
}

// ---------------------------------------------------------------------------

AsymReport asym_residuals(const Spectrum& mu, const Coefficient& p, const Coefficient& q, int K, int n_min) {
    if (mu.kind != OperatorKind::FourthOrder) throw ArgumentError("asym_residuals: needs a fourth-order spectrum");
    if (n_min < 1 || n_min > K) throw ArgumentError("asym_residuals: need 1 <= n_min <= K");
    require_trusted(mu, K, "fourth-order");
    const long double p0 = functionals(p).mean;
    const long double P = big_P(p);
    const long double q0 = functionals(q).mean;
    const CosineSeq v = cosine_coeffs(build_V(p, q), 2 * K);

    AsymReport r;
    r.n_min = n_min;
    r.k_max = K;
    r.residuals.resize(static_cast<std::size_t>(K));
    for (int n = 1; n <= K; ++n) {
        const long double pn2 = (kPiL * n) * (kPiL * n);
        const long double model_rest = -(P + p0 * p0) / 2 + q0 - v.cos2n(static_cast<std::size_t>(n));
        const long double res = (mu(n) - pn2 * pn2 + 2 * p0 * pn2 - p0 * p0) - model_rest;
        r.residuals[static_cast<std::size_t>(n - 1)] = static_cast<double>(res);
        if (n >= n_min) r.fitted_C = std::max(r.fitted_C, static_cast<double>(n) * n * std::abs(static_cast<double>(res)));
    }
    return r;
}

AsymReport asym_residuals(const OperatorSpec& spec, int N, int K, int n_min, const SpectrumOptions& options) {
    if (spec.kind != OperatorKind::FourthOrder) throw ArgumentError("asym_residuals: spec must be fourth order");
    const OperatorSpec s = shifted_coefficients(spec);
    const Spectrum mu = spectrum(spec, N, options);
    return asym_residuals(mu, s.p, s.q + s.Q, K, n_min);
}

LocalizationReport localization(const Spectrum& s) {
    const int order = s.kind == OperatorKind::SecondOrder ? 2 : 4;
    const int nt = s.n_trusted;
    LocalizationReport r;
    r.window_counts.assign(static_cast<std::size_t>(nt), 0);
    std::vector<std::complex<double>> roots;
    roots.reserve(s.vals.size());
    for (double v : s.vals) roots.push_back(std::pow(std::complex<double>(v, 0.0), 1.0 / order));
    for (int n = 1; n <= nt; ++n)
        for (const auto& z : roots)
            if (std::abs(z - std::complex<double>(kPi * n, 0.0)) < kPi / 4) ++r.window_counts[static_cast<std::size_t>(n - 1)];

    auto disc = [&](int n0) {
        const double radius = std::pow(kPi * (n0 + 0.5), order);
        return static_cast<int>(std::count_if(s.vals.begin(), s.vals.end(), [&](double v) { return std::abs(v) < radius; }));
    };
    // ok_from[k]: every window n > k (up to nt) holds exactly one eigenvalue.
    std::vector<bool> ok_from(static_cast<std::size_t>(nt) + 1, true);
    for (int k = nt - 1; k >= 0; --k)
        ok_from[static_cast<std::size_t>(k)] = ok_from[static_cast<std::size_t>(k) + 1] && r.window_counts[static_cast<std::size_t>(k)] == 1;

    r.n0 = nt;
    for (int n0 = 0; n0 <= nt; ++n0) {
        if (ok_from[static_cast<std::size_t>(n0)] && disc(n0) == n0) {
            r.n0 = n0;
            r.found = true;
            break;
        }
    }
    r.disc_count = disc(r.n0);
    for (int n = r.n0 + 1; n <= nt; ++n)
        if (r.window_counts[static_cast<std::size_t>(n - 1)] != 1) r.violations.push_back(n);
    return r;
}

}  // namespace tracelab
