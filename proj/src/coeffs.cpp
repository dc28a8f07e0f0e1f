#include "tracelab/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

constexpr double kPi = std::numbers::pi;

double alternating(int j) { return (j % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

Coefficient::Coefficient(std::vector<double> u, std::vector<double> w) {
    if (u.empty()) u.push_back(0.0);
    const int degree = std::max(static_cast<int>(u.size()) - 1, static_cast<int>(w.size()));
    u_.assign(degree + 1, 0.0);
    w_.assign(degree + 1, 0.0);
    std::copy(u.begin(), u.end(), u_.begin());
    std::copy(w.begin(), w.end(), w_.begin() + 1);
}

Coefficient Coefficient::cos_mode(int j, double amplitude) {
    if (j < 0) throw ArgumentError("cos_mode: negative frequency index");
    std::vector<double> u(j + 1, 0.0);
    u[j] = amplitude;
    return Coefficient(std::move(u));
}

Coefficient Coefficient::sin_mode(int j, double amplitude) {
    if (j < 1) throw ArgumentError("sin_mode: frequency index must be >= 1");
    std::vector<double> w(j, 0.0);
    w[j - 1] = amplitude;
    return Coefficient({0.0}, std::move(w));
}

double Coefficient::u(int j) const noexcept {
    return (j >= 0 && j <= degree()) ? u_[j] : 0.0;
}

double Coefficient::w(int j) const noexcept {
    return (j >= 1 && j <= degree()) ? w_[j] : 0.0;
}

bool Coefficient::is_one_periodic() const noexcept {
    for (int j = 1; j <= degree(); j += 2)
        if (u_[j] != 0.0 || w_[j] != 0.0) return false;
    return true;
}

bool Coefficient::is_zero() const noexcept {
    return std::all_of(u_.begin(), u_.end(), [](double v) { return v == 0.0; }) &&
           std::all_of(w_.begin(), w_.end(), [](double v) { return v == 0.0; });
}

void Coefficient::resize_to(int degree) {
    if (degree > this->degree()) {
        u_.resize(degree + 1, 0.0);
        w_.resize(degree + 1, 0.0);
    }
}

Coefficient Coefficient::operator-() const {
    Coefficient r = *this;
    r *= -1.0;
    return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& g) {
    resize_to(g.degree());
    for (int j = 0; j <= g.degree(); ++j) {
        u_[j] += g.u_[j];
        w_[j] += g.w_[j];
    }
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& g) {
    resize_to(g.degree());
    for (int j = 0; j <= g.degree(); ++j) {
        u_[j] -= g.u_[j];
        w_[j] -= g.w_[j];
    }
    return *this;
}

Coefficient& Coefficient::operator*=(double s) {
    for (auto& v : u_) v *= s;
    for (auto& v : w_) v *= s;
    return *this;
}

std::string Coefficient::describe() const {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    auto term = [&](double a, const char* fn, int j) {
        if (a == 0.0) return;
        if (!first) os << " + ";
        first = false;
        os << a;
        if (j == 0) return;
        os << '*' << fn << '(';
        if (j != 1) os << j;
        os << "pi x)";
    };
    term(u_[0], "", 0);
    for (int j = 1; j <= degree(); ++j) {
        term(u_[j], "cos", j);
        term(w_[j], "sin", j);
    }
    if (first) os << '0';
    return os.str();
}

double evaluate(const Coefficient& f, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("evaluate: x = " + std::to_string(x) + " is outside [0,1]");
    double s = f.u(0);
    for (int j = 1; j <= f.degree(); ++j) {
        const double t = kPi * j * x;
        s += f.u(j) * std::cos(t) + f.w(j) * std::sin(t);
    }
    return s;
}

Coefficient derivative(const Coefficient& f, int order) {
    if (order != 1 && order != 2)
        throw ArgumentError("derivative: order " + std::to_string(order) + " unsupported (1 or 2)");
    const int J = f.degree();
    std::vector<double> u(J + 1, 0.0), w(J, 0.0);
    for (int j = 1; j <= J; ++j) {
        const double k = kPi * j;
        if (order == 1) {
            u[j] = k * f.w(j);
            w[j - 1] = -k * f.u(j);
        } else {
            u[j] = -k * k * f.u(j);
            w[j - 1] = -k * k * f.w(j);
        }
    }
    return Coefficient(std::move(u), std::move(w));
}

Coefficient multiply(const Coefficient& f, const Coefficient& g) {
    const int J = f.degree() + g.degree();
    std::vector<double> u(J + 1, 0.0), w(J + 1, 0.0);  // w[0] is scratch for sin(0) = 0
    auto add_cos = [&](int k, double a) { u[std::abs(k)] += a; };
    auto add_sin = [&](int k, double a) {
        if (k > 0) w[k] += a;
        else if (k < 0) w[-k] -= a;
    };
    // u_0 is the j = 0 cosine term, so one set of product-to-sum rules covers everything.
    for (int i = 0; i <= f.degree(); ++i) {
        const double fu = f.u(i), fw = f.w(i);
        for (int j = 0; j <= g.degree(); ++j) {
            const double gu = g.u(j), gw = g.w(j);
            if (fu != 0.0 && gu != 0.0) {
                add_cos(i - j, 0.5 * fu * gu);
                add_cos(i + j, 0.5 * fu * gu);
            }
            if (fw != 0.0 && gw != 0.0) {
                add_cos(i - j, 0.5 * fw * gw);
                add_cos(i + j, -0.5 * fw * gw);
            }
            if (fw != 0.0 && gu != 0.0) {  // sin(a) cos(b)
                add_sin(i + j, 0.5 * fw * gu);
                add_sin(i - j, 0.5 * fw * gu);
            }
            if (fu != 0.0 && gw != 0.0) {  // cos(a) sin(b)
                add_sin(i + j, 0.5 * fu * gw);
                add_sin(j - i, 0.5 * fu * gw);
            }
        }
    }
    w.erase(w.begin());
    return Coefficient(std::move(u), std::move(w));
}

Coefficient shift(const Coefficient& f, double tau) {
    if (!f.is_one_periodic())
        throw PreconditionError(
            "shift: coefficient must be 1-periodic (no odd-index modes); the shifted family "
            "requires coefficients in the periodic Sobolev class");
    const int J = f.degree();
    std::vector<double> u(J + 1, 0.0), w(J, 0.0);
    u[0] = f.u(0);
    for (int j = 1; j <= J; ++j) {
        const double c = std::cos(kPi * j * tau), s = std::sin(kPi * j * tau);
        u[j] = f.u(j) * c + f.w(j) * s;
        w[j - 1] = -f.u(j) * s + f.w(j) * c;
    }
    return Coefficient(std::move(u), std::move(w));
}

CosineSeq cosine_coeffs(const Coefficient& f, int k_max) {
    if (k_max < 0) throw ArgumentError("cosine_coeffs: K_max must be >= 0");
    CosineSeq out;
    out.c.assign(k_max + 1, 0.0);
    out.c[0] = f.u(0);
    for (int k = 1; k <= std::min(k_max, f.degree()); ++k) out.c[k] = 0.5 * f.u(k);
    for (int j = 1; j <= f.degree(); ++j) {
        const double wj = f.w(j);
        if (wj == 0.0) continue;
        const double scale = 2.0 * j / kPi * wj;
        // Only k with j + k odd contribute; j == k is even and therefore skipped.
        for (int k = (j % 2 == 0) ? 1 : 0; k <= k_max; k += 2)
            out.c[k] += scale / (static_cast<double>(j) * j - static_cast<double>(k) * k);
    }
    return out;
}

Functionals functionals(const Coefficient& f) {
    Functionals r;
    auto mean_of = [](const Coefficient& g) {
        double m = g.u(0);
        for (int j = 1; j <= g.degree(); j += 2) m += 2.0 * g.w(j) / (kPi * j);
        return m;
    };
    r.mean = mean_of(f);
    r.l2sq = mean_of(multiply(f, f));
    for (int j = 0; j <= f.degree(); ++j) {
        const double sgn = alternating(j);
        const double k = kPi * j;
        r.end0 += f.u(j);
        r.end1 += sgn * f.u(j);
        r.d1_0 += k * f.w(j);
        r.d1_1 += sgn * k * f.w(j);
        r.d2_0 -= k * k * f.u(j);
        r.d2_1 -= sgn * k * k * f.u(j);
    }
    return r;
}

double big_P(const Coefficient& f) {
    const Functionals fn = functionals(f);
    return (fn.d1_1 - fn.d1_0) + fn.l2sq;
}

Coefficient build_V(const Coefficient& p, const Coefficient& q) {
    return q - 0.5 * derivative(p, 2);
}

double cos2n_series_sum(const Coefficient& f) {
    const Functionals fn = functionals(f);
    return 0.25 * (fn.end0 + fn.end1) - 0.5 * fn.mean;
}

}  // namespace tracelab
