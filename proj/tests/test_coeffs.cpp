#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "tracelab/coeffs.hpp"
#include "tracelab/errors.hpp"

using namespace tracelab;
using std::numbers::pi;

namespace {

double direct(const Coefficient& f, double x) {
    double s = f.u(0);
    for (int j = 1; j <= f.degree(); ++j) s += f.u(j) * std::cos(pi * j * x) + f.w(j) * std::sin(pi * j * x);
    return s;
}

}  // namespace

TEST_CASE("construction pads u and w to a common degree") {
    const Coefficient f({1.0}, {0.0, 0.0, 2.0});
    CHECK(f.degree() == 3);
    CHECK(f.u(0) == 1.0);
    CHECK(f.u(3) == 0.0);
    CHECK(f.w(3) == 2.0);
    CHECK(f.w(7) == 0.0);
    CHECK(Coefficient().is_zero());
    CHECK(Coefficient::cos_mode(2, 3.0).u(2) == 3.0);
    CHECK_THROWS_AS(Coefficient::sin_mode(0), ArgumentError);
    CHECK_THROWS_AS(Coefficient::cos_mode(-1), ArgumentError);
}

TEST_CASE("periodicity means no odd-index modes") {
    CHECK(Coefficient::cos_mode(2).is_one_periodic());
    CHECK(Coefficient::sin_mode(4).is_one_periodic());
    CHECK_FALSE(Coefficient::cos_mode(1).is_one_periodic());
    CHECK_FALSE(Coefficient::sin_mode(3).is_one_periodic());
}

TEST_CASE("evaluate agrees with the trigonometric sum and rejects x outside [0,1]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 6);
        for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) CHECK(evaluate(f, x) == doctest::Approx(direct(f, x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(evaluate(Coefficient::cos_mode(1), -0.01), DomainError);
    CHECK_THROWS_AS(evaluate(Coefficient::cos_mode(1), 1.01), DomainError);
}

TEST_CASE("algebra: sums, scaling and negation act on amplitudes") {
    const Coefficient f({1.0, 2.0}, {3.0});
    const Coefficient g({0.5}, {0.0, 4.0});
    const Coefficient h = f + 2.0 * g - (-f);
    CHECK(h.u(0) == doctest::Approx(3.0));
    CHECK(h.u(1) == doctest::Approx(4.0));
    CHECK(h.w(1) == doctest::Approx(6.0));
    CHECK(h.w(2) == doctest::Approx(8.0));
    CHECK((f - f).is_zero());
}

TEST_CASE("derivatives match central differences") {
    std::mt19937_64 rng(11);
    const Coefficient f = testing::random_coefficient(rng, 5);
    const Coefficient d1 = derivative(f, 1), d2 = derivative(f, 2);
    const double h = 1e-4;
    for (double x : {0.2, 0.45, 0.8}) {
        CHECK(evaluate(d1, x) == doctest::Approx((direct(f, x + h) - direct(f, x - h)) / (2 * h)).epsilon(1e-6));
        CHECK(evaluate(d2, x) ==
              doctest::Approx((direct(f, x + h) - 2 * direct(f, x) + direct(f, x - h)) / (h * h)).epsilon(1e-4));
    }
    CHECK_THROWS_AS(derivative(f, 3), ArgumentError);
    CHECK_THROWS_AS(derivative(f, 0), ArgumentError);
}

TEST_CASE("product is pointwise") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 4), g = testing::random_coefficient(rng, 3);
        const Coefficient fg = multiply(f, g);
        CHECK(fg.degree() == 7);
        for (double x : {0.0, 0.31, 0.6, 1.0})
            CHECK(evaluate(fg, x) == doctest::Approx(direct(f, x) * direct(g, x)).epsilon(1e-12));
    }
}

TEST_CASE("cosine coefficients against Simpson quadrature") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 5);
        const CosineSeq c = cosine_coeffs(f, 12);
        for (int k = 0; k <= 12; ++k) {
            const double q = testing::simpson([&](double x) { return direct(f, x) * std::cos(pi * k * x); });
            CHECK(std::abs(c[static_cast<std::size_t>(k)] - q) < 1e-9);
        }
        CHECK(c[100] == 0.0);
    }
    CHECK_THROWS_AS(cosine_coeffs(Coefficient{}, -1), ArgumentError);
}

TEST_CASE("functionals against quadrature and endpoint jets") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 6);
        const Functionals fn = functionals(f);
        CHECK(std::abs(fn.mean - testing::simpson([&](double x) { return direct(f, x); })) < 1e-9);
        CHECK(std::abs(fn.l2sq - testing::simpson([&](double x) { return direct(f, x) * direct(f, x); })) < 1e-9);
        CHECK(fn.end0 == doctest::Approx(evaluate(f, 0.0)));
        CHECK(fn.end1 == doctest::Approx(evaluate(f, 1.0)));
        CHECK(fn.d1_0 == doctest::Approx(evaluate(derivative(f, 1), 0.0)));
        CHECK(fn.d1_1 == doctest::Approx(evaluate(derivative(f, 1), 1.0)));
        CHECK(fn.d2_0 == doctest::Approx(evaluate(derivative(f, 2), 0.0)));
        CHECK(fn.d2_1 == doctest::Approx(evaluate(derivative(f, 2), 1.0)));
    }
}

TEST_CASE("Parseval in the cosine basis") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 4);
        const CosineSeq c = cosine_coeffs(f, 200000);
        double s = c[0] * c[0];
        for (std::size_t k = 1; k < c.size(); ++k) s += 2.0 * c[k] * c[k];
        CHECK(std::abs(s - functionals(f).l2sq) < 1e-9);
    }
}

TEST_CASE("endpoint identity for the series of c_{2n}") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 5);
        const int n_max = 100000;
        const CosineSeq c = cosine_coeffs(f, 2 * n_max);
        double s = 0.0;
        for (int n = 1; n <= n_max; ++n) s += c.cos2n(static_cast<std::size_t>(n));
        CHECK(std::abs(s - cos2n_series_sum(f)) < 1e-4);
    }
    // Worked values: cos(2 pi x) -> 1/2, cos(pi x) -> 0, constant c -> 0.
    CHECK(cos2n_series_sum(Coefficient::cos_mode(2)) == doctest::Approx(0.5));
    CHECK(cos2n_series_sum(Coefficient::cos_mode(1)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cos2n_series_sum(Coefficient::constant(3.0)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("shift translates periodic coefficients isometrically") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Coefficient f = testing::random_coefficient(rng, 6, true);
        const double tau = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const Coefficient g = shift(f, tau);
        CHECK(functionals(g).l2sq == doctest::Approx(functionals(f).l2sq).epsilon(1e-13));
        CHECK(functionals(g).mean == doctest::Approx(functionals(f).mean).epsilon(1e-13));
        for (double x : {0.0, 0.2, 0.9}) {
            const double y = std::fmod(x + tau, 1.0);
            CHECK(evaluate(g, x) == doctest::Approx(direct(f, y)).epsilon(1e-12));
        }
    }
    CHECK(shift(Coefficient::cos_mode(2), 0.5).u(2) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(shift(Coefficient::cos_mode(1), 0.25), PreconditionError);
}

TEST_CASE("P and V for the worked example") {
    const Coefficient p = Coefficient::cos_mode(2);
    CHECK(big_P(p) == doctest::Approx(0.5));
    const Coefficient V = build_V(p, Coefficient::sin_mode(2));
    CHECK(V.u(2) == doctest::Approx(2.0 * pi * pi));
    CHECK(V.w(2) == doctest::Approx(1.0));
    // A sine mode contributes p'(1) - p'(0) to P.
    const Coefficient s = Coefficient::sin_mode(1);
    CHECK(big_P(s) == doctest::Approx(-2.0 * pi + 0.5));
}

TEST_CASE("describe lists nonzero modes") {
    CHECK(Coefficient().describe() == "0");
    CHECK(Coefficient::cos_mode(2).describe().find("cos") != std::string::npos);
}
