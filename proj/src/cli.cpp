#include "tracelab/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tracelab/errors.hpp"
#include "tracelab/inverse.hpp"
#include "tracelab/report_io.hpp"
#include "tracelab/traces.hpp"

namespace tracelab::cli {

namespace {

struct RunConfig {
    std::string p_path, q_path, Q_path;
    int N = 256;
    int K = 64;
    std::string mode = "fourier";
    int grid = 16;
    std::string out;
    std::string format;
    std::string kind = "fourth";
    double tau = 0.0;

    std::string formula;
    bool recenter = false;
    double tol = 0.0;

    std::string variant;
    int n_min = 8;

    std::string recover;
    unsigned threads = 0;
    bool with_spectra = false;
};

Coefficient coefficient_or_zero(const std::string& path) {
    return path.empty() ? Coefficient{} : load_coefficient(path);
}

std::string resolved_format(const RunConfig& c) {
    if (!c.format.empty()) return c.format;
    if (c.out.size() >= 4 && c.out.compare(c.out.size() - 4, 4, ".csv") == 0) return "csv";
    return "json";
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InputError(c.out + ": cannot open for writing");
    f << text;
    if (!f) throw InputError(c.out + ": write failed");
}

void require_n_vs_k(const RunConfig& c) {
    if (c.N < 2 * c.K)
        throw ArgumentError("N must be >= 2K (N = " + std::to_string(c.N) + ", K = " + std::to_string(c.K) + ")");
}

AccelMode parse_mode(const std::string& s) {
    auto m = accel_mode_from_string(s);
    if (!m) throw ArgumentError("unknown mode '" + s + "' (fourier, richardson, none)");
    return *m;
}

OperatorKind parse_kind(const std::string& s) {
    if (s == "second") return OperatorKind::SecondOrder;
    if (s == "fourth") return OperatorKind::FourthOrder;
    if (s == "square") return OperatorKind::SquarePlusQ;
    throw ArgumentError("unknown operator kind '" + s + "' (second, fourth, square)");
}

OperatorSpec spec_from(const RunConfig& c) {
    OperatorSpec s;
    s.kind = parse_kind(c.kind);
    s.p = coefficient_or_zero(c.p_path);
    s.q = coefficient_or_zero(c.q_path);
    s.Q = coefficient_or_zero(c.Q_path);
    s.tau = c.tau;
    s.scope = s.kind == OperatorKind::SquarePlusQ ? ShiftScope::QOnly : ShiftScope::All;
    return s;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    const Spectrum s = spectrum(spec_from(c), c.N);
    emit(c, resolved_format(c) == "csv" ? to_csv(s) : to_json(s), out);
    return kExitOk;
}

int cmd_trace(const RunConfig& c, std::ostream& out) {
    require_n_vs_k(c);
    const auto id = formula_from_string(c.formula);
    if (!id) throw ArgumentError("unknown formula '" + c.formula + "'");
    TraceInputs in{coefficient_or_zero(c.p_path), coefficient_or_zero(c.q_path), coefficient_or_zero(c.Q_path), c.tau};
    VerifyOptions opt;
    opt.mode = parse_mode(c.mode);
    opt.recenter_q = c.recenter;
    if (c.tol > 0.0) opt.tol = c.tol;
    const TraceReport r = verify(*id, in, c.N, c.K, opt);
    if (r.q_shift != 0.0) in.q = in.q - Coefficient::constant(r.q_shift);

    if (!c.out.empty()) emit(c, resolved_format(c) == "csv" ? to_csv(r, in) : to_json(r), out);
    out << "formula=" << to_string(r.formula) << " gap=" << csv_number(r.gap) << " tol=" << r.tol << ' '
        << (r.pass() ? "PASS" : "FAIL") << '\n';
    if (!r.pass()) {
        out << "tested " << to_string(r.formula) << ": " << formula_statement(r.formula) << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_dispute(const RunConfig& c, std::ostream& out) {
    require_n_vs_k(c);
    const auto v = dispute_from_string(c.variant);
    if (!v) throw ArgumentError("unknown dispute variant '" + c.variant + "' (DikiiTrfD1, DikiiD2, SadovnichiiTrS)");
    DisputeOptions opt;
    if (c.tol > 0.0) opt.tol = c.tol;
    const DisputeReport r = dispute(*v, coefficient_or_zero(c.p_path), c.N, c.K, opt);
    if (!c.out.empty()) emit(c, to_json(r), out);
    out << "variant=" << to_string(r.variant) << " lhs=" << csv_number(r.computed_lhs)
        << " variant_rhs=" << csv_number(r.variant_rhs) << " paper_rhs=" << csv_number(r.paper_rhs)
        << " verdict=" << r.verdict << '\n';
    return kExitOk;
}

int cmd_asym(const RunConfig& c, std::ostream& out) {
    require_n_vs_k(c);
    OperatorSpec s = spec_from(c);
    s.kind = OperatorKind::FourthOrder;
    s.scope = ShiftScope::All;
    const AsymReport r = asym_residuals(s, c.N, c.K, c.n_min);
    if (!c.out.empty()) emit(c, resolved_format(c) == "csv" ? to_csv(r) : to_json(r), out);
    out << "C=" << csv_number(r.fitted_C) << " n_min=" << r.n_min << " K=" << r.k_max << '\n';
    return kExitOk;
}

int cmd_localize(const RunConfig& c, std::ostream& out) {
    const Spectrum s = spectrum(spec_from(c), c.N);
    const LocalizationReport r = localization(s);
    if (!c.out.empty()) emit(c, to_json(r), out);
    out << "n0=" << r.n0 << " found=" << (r.found ? "yes" : "no") << " violations=" << r.violations.size()
        << " n_trusted=" << s.n_trusted << '\n';
    return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    require_n_vs_k(c);
    const auto target = sweep_target_from_string(c.recover);
    if (!target) throw ArgumentError("unknown recovery target '" + c.recover + "' (V, q, Q, p)");
    OperatorSpec base = spec_from(c);
    base.tau = 0.0;
    SweepOptions opt;
    opt.mode = parse_mode(c.mode);
    opt.threads = c.threads;
    const SweepResult r = sweep(base, *target, c.grid, c.N, c.K, opt);
    emit(c, resolved_format(c) == "csv" ? to_csv(r) : to_json(r, c.with_spectra), out);
    return kExitOk;
}

void add_coefficients(CLI::App* sub, RunConfig& c, bool with_q, bool with_Q) {
    sub->add_option("--p", c.p_path, "JSON file with the coefficient p");
    if (with_q) sub->add_option("--q", c.q_path, "JSON file with the coefficient q");
    if (with_Q) sub->add_option("--Q", c.Q_path, "JSON file with the perturbation Q");
}

void add_output(CLI::App* sub, RunConfig& c) {
    sub->add_option("--out", c.out, "Output file (stdout when omitted)");
    sub->add_option("--format", c.format, "csv or json (default: from the --out extension, else json)")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra, trace formulas and coefficient recovery for -y'' - p y and y'''' + 2(p y')' + q y"};
    app.require_subcommand(1);
    RunConfig c;

    auto* spec = app.add_subcommand("spectrum", "Eigenvalues with error estimates and trust horizon");
    add_coefficients(spec, c, true, true);
    spec->add_option("--kind", c.kind, "second, fourth or square (h^2 + Q)")->capture_default_str();
    spec->add_option("-N", c.N, "Basis size")->capture_default_str();
    spec->add_option("--tau", c.tau, "Shift of the periodic coefficients");
    add_output(spec, c);

    auto* trace = app.add_subcommand("trace", "Check one trace formula");
    trace->add_option("--formula", c.formula, "GLF, S01, TRF3, TRS, TRQ0, TR3, COR1, IPR1, IP2")->required();
    add_coefficients(trace, c, true, true);
    trace->add_option("-N", c.N, "Basis size")->capture_default_str();
    trace->add_option("-K", c.K, "Number of summed terms")->capture_default_str();
    trace->add_option("--mode", c.mode, "fourier, richardson or none")->capture_default_str();
    trace->add_option("--tau", c.tau, "Shift (IPR1, IP2)");
    trace->add_flag("--recenter", c.recenter, "Subtract the mean of q instead of rejecting it");
    trace->add_option("--tol", c.tol, "Pass/fail tolerance on |gap|");
    add_output(trace, c);

    auto* disp = app.add_subcommand("dispute", "Compare a historical formula with the computed sum");
    disp->add_option("--variant", c.variant, "DikiiTrfD1, DikiiD2 or SadovnichiiTrS")->required();
    add_coefficients(disp, c, false, false);
    disp->add_option("-N", c.N, "Basis size")->capture_default_str();
    disp->add_option("-K", c.K, "Number of terms")->capture_default_str();
    disp->add_option("--tol", c.tol, "Matching tolerance");
    add_output(disp, c);

    auto* asym = app.add_subcommand("asym", "Residuals of the large-n eigenvalue asymptotics");
    add_coefficients(asym, c, true, true);
    asym->add_option("-N", c.N, "Basis size")->capture_default_str();
    asym->add_option("-K", c.K, "Largest n")->capture_default_str();
    asym->add_option("--nmin", c.n_min, "Smallest n in the constant fit")->capture_default_str();
    add_output(asym, c);

    auto* loc = app.add_subcommand("localize", "Localization threshold of large eigenvalues");
    add_coefficients(loc, c, true, true);
    loc->add_option("--kind", c.kind, "second, fourth or square (h^2 + Q)")->capture_default_str();
    loc->add_option("-N", c.N, "Basis size")->capture_default_str();
    loc->add_option("--tau", c.tau, "Shift of the periodic coefficients");
    add_output(loc, c);

    auto* sw = app.add_subcommand("sweep", "Recover a coefficient from spectra of shifted operators");
    sw->add_option("--recover", c.recover, "V, q, Q or p")->required();
    add_coefficients(sw, c, true, true);
    sw->add_option("-N", c.N, "Basis size")->capture_default_str();
    sw->add_option("-K", c.K, "Number of summed terms")->capture_default_str();
    sw->add_option("--mode", c.mode, "fourier, richardson or none")->capture_default_str();
    sw->add_option("--grid", c.grid, "Number of shifts on [0,1)")->capture_default_str();
    sw->add_option("--threads", c.threads, "Worker threads (0: hardware count)");
    sw->add_flag("--spectra", c.with_spectra, "Include every spectrum in JSON output");
    add_output(sw, c);

    // CLI11 consumes a reversed argument list without the program name.
    std::vector<std::string> rest;
    for (std::size_t i = args.size(); i-- > 1;) rest.push_back(args[i]);
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*spec) return cmd_spectrum(c, out);
        if (*trace) return cmd_trace(c, out);
        if (*disp) return cmd_dispute(c, out);
        if (*asym) return cmd_asym(c, out);
        if (*loc) return cmd_localize(c, out);
        if (*sw) return cmd_sweep(c, out);
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RangeError& e) {
        err << "out of range: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace tracelab::cli
