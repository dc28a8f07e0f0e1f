#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "support.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/traces.hpp"

using namespace tracelab;
using std::numbers::pi;

namespace {

const Coefficient c1 = Coefficient::cos_mode(1);
const Coefficient c2 = Coefficient::cos_mode(2);
const Coefficient s2 = Coefficient::sin_mode(2);

TraceInputs inputs(Coefficient p, Coefficient q = {}, Coefficient Q = {}, double tau = 0.0) {
    return TraceInputs{std::move(p), std::move(q), std::move(Q), tau};
}

std::string precondition_message(FormulaId id, const TraceInputs& in) {
    try {
        check_preconditions(id, in);
    } catch (const PreconditionError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("names round-trip") {
    for (auto id : {FormulaId::GLF, FormulaId::S01, FormulaId::TRF3, FormulaId::TRS, FormulaId::TRQ0, FormulaId::TR3,
                    FormulaId::COR1, FormulaId::IPR1, FormulaId::IP2}) {
        CHECK(formula_from_string(to_string(id)) == id);
        CHECK_FALSE(formula_statement(id).empty());
    }
    CHECK_FALSE(formula_from_string("XYZ"));
    for (auto m : {AccelMode::Fourier, AccelMode::Richardson, AccelMode::None})
        CHECK(accel_mode_from_string(to_string(m)) == m);
    for (auto v : {DisputeVariant::DikiiTrfD1, DisputeVariant::DikiiD2, DisputeVariant::SadovnichiiTrS})
        CHECK(dispute_from_string(to_string(v)) == v);
}

TEST_CASE("closed-form right-hand sides") {
    CHECK(rhs(FormulaId::TRF3, inputs(c2)) == doctest::Approx(-0.125 - pi * pi).epsilon(1e-14));
    CHECK(rhs(FormulaId::S01, inputs(c2)) == doctest::Approx(pi * pi - 0.375).epsilon(1e-14));
    CHECK(rhs(FormulaId::S01, inputs(c1)) == doctest::Approx(-0.375).epsilon(1e-14));
    CHECK(rhs(FormulaId::GLF, inputs(c1 + c2)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(rhs(FormulaId::GLF, inputs(c1))) < 1e-15);
    CHECK(rhs(FormulaId::TRS, inputs({}, c2)) == doctest::Approx(-0.5));
    CHECK(rhs(FormulaId::TR3, inputs({}, {}, c2)) == doctest::Approx(-0.5));
    CHECK(rhs(FormulaId::COR1, inputs(c2, {}, Coefficient::constant(3.0))) == doctest::Approx(0.0));
    CHECK(rhs(FormulaId::IP2, inputs({}, {}, s2, 0.25)) == doctest::Approx(-0.5));
    // IPR1 at tau = 0 reduces to TRF3 for periodic coefficients.
    CHECK(rhs(FormulaId::IPR1, inputs(c2, s2)) == doctest::Approx(rhs(FormulaId::TRF3, inputs(c2, s2))).epsilon(1e-14));
}

TEST_CASE("TRF3 and TRQ0 right sides agree for q = 0") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const Coefficient p = testing::random_coefficient(rng, 6);
        const double a = rhs(FormulaId::TRF3, inputs(p)), b = rhs(FormulaId::TRQ0, inputs(p));
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("preconditions name the hypothesis") {
    const std::string m = precondition_message(FormulaId::TRF3, inputs(c2, Coefficient::constant(1.0)));
    CHECK(m.find("TRF3") != std::string::npos);
    CHECK(m.find("zero mean") != std::string::npos);
    CHECK(precondition_message(FormulaId::TRS, inputs(c2)).find("constant") != std::string::npos);
    CHECK(precondition_message(FormulaId::TRQ0, inputs(c2, s2)).find("zero") != std::string::npos);
    CHECK(precondition_message(FormulaId::IP2, inputs({}, {}, Coefficient::constant(1.0))).find("zero mean") !=
          std::string::npos);
    CHECK(precondition_message(FormulaId::IPR1, inputs(c1)).find("periodic") != std::string::npos);
    CHECK(precondition_message(FormulaId::IP2, inputs({}, {}, Coefficient::cos_mode(3))).find("periodic") !=
          std::string::npos);
    CHECK_FALSE(precondition_message(FormulaId::GLF, inputs(c2, {}, {}, 0.5)).empty());
    CHECK_FALSE(precondition_message(FormulaId::COR1, inputs(c2, s2, c2)).empty());
    CHECK(precondition_message(FormulaId::TR3, inputs(c2, s2, c2)).empty());
    CHECK_THROWS_AS(verify(FormulaId::TRF3, inputs(c2, Coefficient::constant(2.0)), 32, 16), PreconditionError);
}

TEST_CASE("recentering removes q0 instead of rejecting") {
    VerifyOptions opt;
    opt.recenter_q = true;
    const TraceReport r = verify(FormulaId::TRS, inputs({}, Coefficient::constant(0.7) + c2), 64, 32, opt);
    CHECK(r.q_shift == doctest::Approx(0.7));
    CHECK(r.pass());
}

TEST_CASE("tail models") {
    // q = cos 2 pi x has c_{2n} = 0 for n > 1, so the remainder vanishes.
    CHECK(std::abs(fourier_tail(FormulaId::TRF3, inputs({}, c2), 8)) < 1e-15);
    const double P = big_P(c2);
    double head = 0;
    for (int n = 1; n <= 20; ++n) head += 1.0 / (n * n);
    CHECK(fourier_tail(FormulaId::GLF, inputs(c2), 20) ==
          doctest::Approx(P / (4 * pi * pi) * (pi * pi / 6 - head)).epsilon(1e-10));
    // A sine mode has cosine coefficients of every parity, so the remainder is nonzero.
    CHECK(std::abs(fourier_tail(FormulaId::TR3, inputs({}, {}, Coefficient::sin_mode(1)), 8)) > 1e-4);

    std::vector<double> partial(16, 1.0);
    CHECK_THROWS_AS(tail_accelerate(FormulaId::TR3, partial, inputs({}), 7, AccelMode::None), ArgumentError);
    CHECK_THROWS_AS(tail_accelerate(FormulaId::TR3, partial, inputs({}), 17, AccelMode::None), ArgumentError);
    std::vector<double> ramp(16);
    for (int k = 1; k <= 16; ++k) ramp[static_cast<std::size_t>(k - 1)] = 2.0 - 1.0 / k;
    CHECK(tail_accelerate(FormulaId::TR3, ramp, inputs({}), 16, AccelMode::Richardson) == doctest::Approx(2.0));
    CHECK(tail_accelerate(FormulaId::TR3, ramp, inputs({}), 16, AccelMode::None) == doctest::Approx(2.0 - 1.0 / 16));
}

TEST_CASE("constant coefficients sum to zero") {
    const TraceReport r = verify(FormulaId::TRF3, inputs(Coefficient::constant(1.0)), 64, 32);
    CHECK(std::abs(r.accelerated) < 1e-5);
    CHECK(std::abs(r.partial.back()) < 1e-5);
    CHECK(r.pass());
    const TraceReport g = verify(FormulaId::GLF, inputs(Coefficient::constant(-2.0)), 64, 32);
    CHECK(std::abs(g.accelerated) < 1e-9);
}

TEST_CASE("fourth-order trace formula for p = cos 2 pi x") {
    const TraceReport r = verify(FormulaId::TRF3, inputs(c2), 128, 48);
    CHECK(r.k_used == 48);
    CHECK(r.partial.size() == 48);
    CHECK(std::abs(r.gap) <= 1e-2);
    CHECK(r.rate_exponent <= -0.8);
    CHECK(r.accelerated_at(48, inputs(c2)) == doctest::Approx(r.accelerated).epsilon(1e-15));
    VerifyOptions rich;
    rich.mode = AccelMode::Richardson;
    CHECK(std::abs(verify(FormulaId::TRF3, inputs(c2), 128, 48, rich).gap) <= 1e-2);
}

TEST_CASE("second-order formulas") {
    CHECK(std::abs(verify(FormulaId::GLF, inputs(c1 + c2), 128, 48).gap) <= 1e-3);
    CHECK(std::abs(verify(FormulaId::GLF, inputs(c1), 128, 48).gap) <= 1e-3);
    CHECK(std::abs(verify(FormulaId::S01, inputs(c1), 128, 48).gap) <= 1e-2);
    CHECK(std::abs(verify(FormulaId::S01, inputs(c2), 128, 48).gap) <= 1e-2);
}

TEST_CASE("perturbation formulas") {
    CHECK(std::abs(verify(FormulaId::TR3, inputs({}, {}, c2), 128, 48).gap) <= 1e-3);
    CHECK(std::abs(verify(FormulaId::TR3, inputs(c2, s2, c1 + s2), 128, 48).gap) <= 1e-3);
    CHECK(std::abs(verify(FormulaId::COR1, inputs(c2, {}, c1), 64, 32).gap) <= 1e-3);
    CHECK(std::abs(verify(FormulaId::IPR1, inputs(c2, s2, {}, 0.3), 128, 48).gap) <= 1e-2);
    CHECK(std::abs(verify(FormulaId::IP2, inputs(c2, {}, s2, 0.3), 64, 32).gap) <= 1e-3);
}

TEST_CASE("cross-formula consistency: TRF3 minus S01 is the sum of mu_n + P - alpha_n^2") {
    const Coefficient p = c2 + Coefficient::cos_mode(4, 0.5);
    const TraceInputs in = inputs(p);
    OperatorSpec H;
    H.p = p;
    OperatorSpec h;
    h.kind = OperatorKind::SecondOrder;
    h.p = p;
    const Spectrum mu = spectrum(H, 128), alpha = spectrum(h, 128);
    const int K = 48;
    const TraceReport t = verify_with_spectra(FormulaId::TRF3, in, {&mu, nullptr}, K);
    const TraceReport s = verify_with_spectra(FormulaId::S01, in, {&alpha, nullptr}, K);
    const double P = big_P(p);
    double direct = 0;
    std::vector<double> partial;
    for (int n = 1; n <= K; ++n) {
        direct += mu(n) + P - alpha(n) * alpha(n);
        partial.push_back(direct);
        CHECK(std::abs(direct - (t.partial[static_cast<std::size_t>(n - 1)] - s.partial[static_cast<std::size_t>(n - 1)])) <
              1e-6);
    }
    const double accelerated = 2.0 * partial[K - 1] - partial[K / 2 - 1];
    CHECK(std::abs((t.accelerated - s.accelerated) - accelerated) <= 2e-2);
}

TEST_CASE("K beyond the trust horizon is rejected") {
    OperatorSpec s;
    s.p = c2;
    const Spectrum mu = spectrum(s, 16);
    CHECK_THROWS_AS(verify_with_spectra(FormulaId::TRF3, inputs(c2), {&mu, nullptr}, 17), RangeError);
    CHECK_THROWS_AS(verify_with_spectra(FormulaId::TR3, inputs({}, {}, c2), {&mu, nullptr}, 8), ArgumentError);
}

TEST_CASE("rate exponent of an exact power law") {
    std::vector<double> partial(64);
    for (int k = 1; k <= 64; ++k) partial[static_cast<std::size_t>(k - 1)] = 3.0 - 2.0 / (k * k);
    CHECK(fit_rate_exponent(partial, 3.0) == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(std::isnan(fit_rate_exponent(std::vector<double>(64, 1.0), 1.0)));
}

TEST_CASE("Dikii variants for p = cos 2 pi x") {
    const DisputeReport d1 = dispute(DisputeVariant::DikiiTrfD1, c2, 128, 48);
    CHECK(d1.verdict == "proven");
    CHECK(std::abs(d1.disagreement - 2 * pi * pi) < 1e-1);
    CHECK(std::abs(d1.computed_lhs - d1.paper_rhs) <= 1e-2);
    const DisputeReport d2 = dispute(DisputeVariant::DikiiD2, c2, 128, 48);
    CHECK(d2.verdict == "indistinguishable");
    CHECK_THROWS_AS(dispute(DisputeVariant::DikiiD2, Coefficient::constant(1.0), 64, 16), PreconditionError);
    CHECK_THROWS_AS(dispute(DisputeVariant::DikiiTrfD1, s2, 64, 16), PreconditionError);
}

TEST_CASE("Sadovnichii constant term for H = h^2") {
    const DisputeReport r = dispute(DisputeVariant::SadovnichiiTrS, c2, 128, 48);
    CHECK(r.verdict == "proven");
    CHECK(r.paper_rhs == doctest::Approx(0.25));
    CHECK(r.variant_rhs == doctest::Approx(0.5));
    CHECK(r.disagreement >= 10 * r.tol);
}

TEST_CASE("asymptotic residuals") {
    OperatorSpec s;
    s.p = Coefficient::constant(1.0);
    const AsymReport flat = asym_residuals(s, 64, 32);
    for (double r : flat.residuals) CHECK(std::abs(r) < 1e-6);
    s.p = c2;
    s.q = s2;
    const AsymReport r = asym_residuals(s, 128, 48);
    CHECK(r.residuals.size() == 48);
    CHECK(std::isfinite(r.fitted_C));
    CHECK(r.fitted_C > 0.5);
    CHECK(r.fitted_C < 1.0);
    s.kind = OperatorKind::SecondOrder;
    CHECK_THROWS_AS(asym_residuals(s, 64, 32), ArgumentError);
}

TEST_CASE("localization counts eigenvalues in windows around pi n") {
    OperatorSpec s;
    s.p = c2;
    s.q = s2;
    const LocalizationReport r = localization(spectrum(s, 64));
    CHECK(r.found);
    CHECK(r.violations.empty());
    CHECK(r.disc_count == r.n0);

    // A synthetic spectrum: one negative eigenvalue, and the third one pulled
    // down next to the second.
    Spectrum fake;
    fake.kind = OperatorKind::FourthOrder;
    const double p4 = std::pow(pi, 4);
    fake.vals = {-50.0, p4 * 16 * 0.999, p4 * 16 * 1.001, p4 * 256, p4 * 625, p4 * 1296};
    fake.est_abs_err.assign(fake.vals.size(), 0.0);
    fake.n_trusted = 6;
    fake.basis_n = 6;
    const LocalizationReport f = localization(fake);
    CHECK(f.window_counts[0] == 0);
    CHECK(f.window_counts[1] == 2);
    CHECK(f.window_counts[2] == 0);
    CHECK(f.disc_count == 3);
    CHECK(f.found);
    CHECK(f.n0 == 3);
    CHECK(f.violations.empty());
}
