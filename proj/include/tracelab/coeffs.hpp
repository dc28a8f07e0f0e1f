#pragma once

// Coefficient functions on [0,1] as finite half-frequency trigonometric
// polynomials
//
//     f(x) = u_0 + sum_{j=1..J} (u_j cos(pi j x) + w_j sin(pi j x)).
//
// The class is closed under differentiation, products and (for 1-periodic
// members) translation, and every functional the trace formulas need has a
// closed form in the amplitudes, so no quadrature enters the main path.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tracelab {

class Coefficient {
public:
    /// The zero function (degree 0).
    Coefficient() : u_(1, 0.0), w_(1, 0.0) {}

    /// `u` holds u_0..u_J, `w` holds w_1..w_J' (it may be shorter or empty).
    Coefficient(std::vector<double> u, std::vector<double> w = {});

    static Coefficient constant(double c) { return Coefficient({c}); }
    static Coefficient cos_mode(int j, double amplitude = 1.0);
    static Coefficient sin_mode(int j, double amplitude = 1.0);

    int degree() const noexcept { return static_cast<int>(u_.size()) - 1; }

    /// Amplitude of cos(pi j x); zero beyond the degree.
    double u(int j) const noexcept;
    /// Amplitude of sin(pi j x), j >= 1; zero beyond the degree.
    double w(int j) const noexcept;

    /// True iff every odd-index amplitude vanishes (f then has period 1).
    bool is_one_periodic() const noexcept;
    bool is_zero() const noexcept;

    Coefficient operator-() const;
    Coefficient& operator+=(const Coefficient& g);
    Coefficient& operator-=(const Coefficient& g);
    Coefficient& operator*=(double s);

    friend Coefficient operator+(Coefficient f, const Coefficient& g) { return f += g; }
    friend Coefficient operator-(Coefficient f, const Coefficient& g) { return f -= g; }
    friend Coefficient operator*(double s, Coefficient f) { return f *= s; }
    friend Coefficient operator*(Coefficient f, double s) { return f *= s; }
    friend bool operator==(const Coefficient&, const Coefficient&) = default;

    /// Short human-readable form, e.g. "1*cos(2pi x) + 0.5*sin(pi x)".
    std::string describe() const;

private:
    void resize_to(int degree);

    std::vector<double> u_;  // index j = 0..J
    std::vector<double> w_;  // index j = 0..J, w_[0] == 0
};

/// Closed-form integrals of a Coefficient and its endpoint jets.
struct Functionals {
    double mean = 0.0;  // f_0 = int_0^1 f
    double l2sq = 0.0;  // ||f||^2
    double end0 = 0.0, end1 = 0.0;
    double d1_0 = 0.0, d1_1 = 0.0;
    double d2_0 = 0.0, d2_1 = 0.0;
};

/// c_k = int_0^1 f(x) cos(pi k x) dx for k = 0..K_max.
struct CosineSeq {
    std::vector<double> c;

    double operator[](std::size_t k) const { return k < c.size() ? c[k] : 0.0; }
    std::size_t size() const noexcept { return c.size(); }
    /// Fourier cosine coefficient int f cos(2 pi n x) = c_{2n}.
    double cos2n(std::size_t n) const { return (*this)[2 * n]; }
};

double evaluate(const Coefficient& f, double x);
Coefficient derivative(const Coefficient& f, int order);
Coefficient multiply(const Coefficient& f, const Coefficient& g);

/// g(x) = f(x + tau mod 1). Requires a 1-periodic f.
Coefficient shift(const Coefficient& f, double tau);

CosineSeq cosine_coeffs(const Coefficient& f, int k_max);
Functionals functionals(const Coefficient& f);

/// P = int_0^1 (f'' + f^2) = (f'(1) - f'(0)) + ||f||^2.
double big_P(const Coefficient& f);

/// V = q - p''/2.
Coefficient build_V(const Coefficient& p, const Coefficient& q);

/// sum_{n>=1} int_0^1 f cos(2 pi n x) dx = (f(0) + f(1))/4 - f_0/2.
/// Value of the periodized Fourier series at the jump, in closed form.
double cos2n_series_sum(const Coefficient& f);

}  // namespace tracelab
