#include "tracelab/inverse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "tracelab/errors.hpp"

namespace tracelab {

std::string_view to_string(SweepTarget t) {
    switch (t) {
        case SweepTarget::V: return "V";
        case SweepTarget::q: return "q";
        case SweepTarget::Q: return "Q";
        case SweepTarget::p_second_order: return "p";
    }
    return "?";
}

std::optional<SweepTarget> sweep_target_from_string(std::string_view name) {
    if (name == "V") return SweepTarget::V;
    if (name == "q") return SweepTarget::q;
    if (name == "Q") return SweepTarget::Q;
    if (name == "p" || name == "p_second_order") return SweepTarget::p_second_order;
    return std::nullopt;
}

namespace {

struct PointResult {
    Spectrum spectrum;
    double accelerated = 0.0;
};

template <class F>
void parallel_for(int count, unsigned threads, F&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

int fit_degree(const SweepResult& sr) {
    const OperatorSpec& b = sr.base;
    int d = 0;
    switch (sr.target) {
        case SweepTarget::V: d = build_V(b.p, b.q).degree(); break;
        case SweepTarget::q: d = b.q.degree(); break;
        case SweepTarget::Q: d = b.Q.degree(); break;
        case SweepTarget::p_second_order: d = b.p.degree(); break;
    }
    const int grid = static_cast<int>(sr.taus.size());
    return std::clamp(d / 2, 0, (grid - 1) / 2);
}

}  // namespace

SweepResult sweep(const OperatorSpec& base, SweepTarget target, int grid_size, int N, int K,
                  const SweepOptions& options) {
    if (grid_size < 4) throw ArgumentError("sweep: grid size must be >= 4 (got " + std::to_string(grid_size) + ")");

    SweepResult sr;
    sr.target = target;
    sr.base = base;
    sr.N = N;
    sr.K = K;
    sr.mode = options.mode;
    sr.base.tau = 0.0;

    VerifyOptions vopt;
    vopt.mode = options.mode;
    vopt.spectrum = options.spectrum;

    std::optional<HEigenbasis> basis_coarse, basis_fine;
    switch (target) {
        case SweepTarget::V:
        case SweepTarget::q:
            sr.base.kind = OperatorKind::FourthOrder;
            sr.base.scope = ShiftScope::All;
            check_preconditions(FormulaId::IPR1, TraceInputs{sr.base.p, sr.base.q, sr.base.Q, 0.0});
            break;
        case SweepTarget::Q: {
            sr.base.kind = OperatorKind::SquarePlusQ;
            sr.base.scope = ShiftScope::QOnly;
            check_preconditions(FormulaId::IP2, TraceInputs{sr.base.p, sr.base.q, sr.base.Q, 0.0});
            OperatorSpec h;
            h.kind = OperatorKind::SecondOrder;
            h.p = sr.base.p;
            sr.reference = spectrum(h, N, options.spectrum);
            basis_coarse = h_eigenbasis(sr.base.p, 2 * N);
            basis_fine = h_eigenbasis(sr.base.p, 4 * N);
            break;
        }
        case SweepTarget::p_second_order:
            sr.base.kind = OperatorKind::SecondOrder;
            sr.base.scope = ShiftScope::All;
            if (!sr.base.q.is_zero() || !sr.base.Q.is_zero())
                throw PreconditionError("p: the second-order sweep takes p only (q and Q must be zero)");
            if (!sr.base.p.is_one_periodic())
                throw PreconditionError("p: p must be 1-periodic (odd-index amplitudes zero)");
            break;
    }

    auto evaluate_at = [&](double tau) {
        PointResult r;
        OperatorSpec spec = sr.base;
        spec.tau = tau;
        switch (target) {
            case SweepTarget::V:
            case SweepTarget::q: {
                r.spectrum = spectrum(spec, N, options.spectrum);
                const TraceInputs in{sr.base.p, sr.base.q, sr.base.Q, tau};
                r.accelerated = verify_with_spectra(FormulaId::IPR1, in, {&r.spectrum, nullptr}, K, vopt).accelerated;
                break;
            }
            case SweepTarget::Q: {
                const Coefficient Qt = tau == 0.0 ? sr.base.Q : shift(sr.base.Q, tau);
                r.spectrum = spectrum_from_pair(assemble_h2_plus_Q(*basis_coarse, Qt, N),
                                                assemble_h2_plus_Q(*basis_fine, Qt, 2 * N), options.spectrum);
                const TraceInputs in{sr.base.p, {}, sr.base.Q, tau};
                r.accelerated =
                    verify_with_spectra(FormulaId::IP2, in, {&r.spectrum, &*sr.reference}, K, vopt).accelerated;
                break;
            }
            case SweepTarget::p_second_order: {
                r.spectrum = spectrum(spec, N, options.spectrum);
                TraceInputs in;
                in.p = tau == 0.0 ? sr.base.p : shift(sr.base.p, tau);
                r.accelerated = verify_with_spectra(FormulaId::GLF, in, {&r.spectrum, nullptr}, K, vopt).accelerated;
                break;
            }
        }
        return r;
    };

    // Index grid_size is the wrap point tau = 1.
    std::vector<PointResult> points(static_cast<std::size_t>(grid_size) + 1);
    parallel_for(grid_size + 1, options.threads, [&](int i) {
        points[static_cast<std::size_t>(i)] = evaluate_at(static_cast<double>(i) / grid_size);
    });

    for (int i = 0; i < grid_size; ++i) {
        auto& pt = points[static_cast<std::size_t>(i)];
        sr.taus.push_back(static_cast<double>(i) / grid_size);
        sr.accelerated.push_back(pt.accelerated);
        sr.spectra.push_back(std::move(pt.spectrum));
    }
    sr.wrap_discrepancy = std::abs(points.back().accelerated - sr.accelerated.front());

    sr.n0 = 0;
    for (const auto& s : sr.spectra) sr.n0 = std::max(sr.n0, localization(s).n0);
    for (const auto& s : sr.spectra) {
        double sum = 0.0;
        for (int n = 1; n <= sr.n0; ++n) sum += s(n);
        sr.sum_branch.push_back(sum);
    }

    switch (target) {
        case SweepTarget::V: {
            const Functionals fp = functionals(sr.base.p);
            sr.recovered = recover_V(sr, fp.mean, fp.l2sq);
            break;
        }
        case SweepTarget::q: sr.recovered = recover_q(sr, sr.base.p); break;
        case SweepTarget::Q:
        case SweepTarget::p_second_order: sr.recovered = recover_Q(sr); break;
    }
    sr.fit = fit_trigonometric(sr.recovered, fit_degree(sr));
    return sr;
}

std::vector<double> recover_V(const SweepResult& sr, double p0, double p_l2sq) {
    if (sr.target != SweepTarget::V && sr.target != SweepTarget::q)
        throw ArgumentError("recover_V: sweep target must be V or q (got " + std::string(to_string(sr.target)) + ")");
    std::vector<double> v;
    v.reserve(sr.accelerated.size());
    for (double a : sr.accelerated) v.push_back(-2.0 * a - 0.5 * (p_l2sq - p0 * p0));
    return v;
}

std::vector<double> recover_q(const SweepResult& sr, const Coefficient& p) {
    const Functionals fp = functionals(p);
    std::vector<double> v = recover_V(sr, fp.mean, fp.l2sq);
    const Coefficient p2 = derivative(p, 2);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += 0.5 * evaluate(p2, sr.taus[i]);
    return v;
}

std::vector<double> recover_Q(const SweepResult& sr) {
    std::vector<double> v;
    v.reserve(sr.accelerated.size());
    if (sr.target == SweepTarget::Q) {
        for (double a : sr.accelerated) v.push_back(-2.0 * a);
    } else if (sr.target == SweepTarget::p_second_order) {
        const double p0 = functionals(sr.base.p).mean;
        for (double a : sr.accelerated) v.push_back(2.0 * a + p0);
    } else {
        throw ArgumentError("recover_Q: sweep target must be Q or p (got " + std::string(to_string(sr.target)) + ")");
    }
    return v;
}

Coefficient fit_trigonometric(const std::vector<double>& values, int degree) {
    const int M = static_cast<int>(values.size());
    if (degree < 0 || 2 * degree >= M)
        throw ArgumentError("fit_trigonometric: need 0 <= 2*degree < grid size (degree " + std::to_string(degree) +
                            ", grid " + std::to_string(M) + ")");
    std::vector<double> u(static_cast<std::size_t>(2 * degree + 1), 0.0);
    std::vector<double> w(static_cast<std::size_t>(2 * degree), 0.0);
    for (int j = 0; j < M; ++j) u[0] += values[static_cast<std::size_t>(j)] / M;
    for (int k = 1; k <= degree; ++k) {
        double a = 0.0, b = 0.0;
        for (int j = 0; j < M; ++j) {
            const double arg = 2.0 * std::numbers::pi * k * j / M;
            a += values[static_cast<std::size_t>(j)] * std::cos(arg);
            b += values[static_cast<std::size_t>(j)] * std::sin(arg);
        }
        u[static_cast<std::size_t>(2 * k)] = 2.0 * a / M;
        w[static_cast<std::size_t>(2 * k - 1)] = 2.0 * b / M;
    }
    return Coefficient(std::move(u), std::move(w));
}

}  // namespace tracelab
