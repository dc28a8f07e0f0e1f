#include "tracelab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tracelab/errors.hpp"

namespace tracelab {

using nlohmann::json;

namespace {

std::string location(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

std::vector<double> number_array(const json& j, std::string_view source, const char* field) {
    if (!j.is_array())
        throw InputError(std::string(source) + ": field '" + field + "' must be an array of numbers, got " +
                         j.type_name());
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw InputError(std::string(source) + ": field '" + field + "' element " + std::to_string(i) +
                             " must be a number, got " + j[i].type_name());
        const double v = j[i].get<double>();
        if (!std::isfinite(v))
            throw InputError(std::string(source) + ": field '" + field + "' element " + std::to_string(i) +
                             " is not finite");
        out.push_back(v);
    }
    return out;
}

json spectrum_json(const Spectrum& s) {
    return json{{"kind", std::string(to_string(s.kind))},
                {"basis_n", s.basis_n},
                {"n_trusted", s.n_trusted},
                {"vals", s.vals},
                {"est_abs_err", s.est_abs_err}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Coefficient parse_coefficient_json(std::string_view text, std::string_view source) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string(source) + ":" + location(text, e.byte > 0 ? e.byte - 1 : 0) +
                         ": malformed JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw InputError(std::string(source) + ": expected an object {\"u\": [...], \"w\": [...]}");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "u" && it.key() != "w")
            throw InputError(std::string(source) + ": unknown field '" + it.key() + "' (allowed: u, w)");
    if (!j.contains("u")) throw InputError(std::string(source) + ": missing required field 'u'");
    auto u = number_array(j["u"], source, "u");
    if (u.empty()) throw InputError(std::string(source) + ": field 'u' must hold at least u0");
    std::vector<double> w;
    if (j.contains("w")) w = number_array(j["w"], source, "w");
    return Coefficient(std::move(u), std::move(w));
}

Coefficient load_coefficient(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_coefficient_json(ss.str(), path);
}

std::string coefficient_to_json(const Coefficient& f) {
    std::vector<double> u, w;
    for (int j = 0; j <= f.degree(); ++j) u.push_back(f.u(j));
    for (int j = 1; j <= f.degree(); ++j) w.push_back(f.w(j));
    return json{{"u", u}, {"w", w}}.dump() + "\n";
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json(const Spectrum& s) { return dump(spectrum_json(s)); }

std::string to_json(const TraceReport& r) {
    return dump(json{{"formula", std::string(to_string(r.formula))},
                     {"statement", std::string(formula_statement(r.formula))},
                     {"mode", std::string(to_string(r.mode))},
                     {"basis_n", r.basis_n},
                     {"k_used", r.k_used},
                     {"partial", r.partial},
                     {"accelerated", r.accelerated},
                     {"rhs", r.rhs},
                     {"gap", r.gap},
                     {"rate_exponent", r.rate_exponent},
                     {"tol", r.tol},
                     {"pass", r.pass()},
                     {"q_shift", r.q_shift},
                     {"inputs_digest", r.inputs_digest}});
}

std::string to_json(const DisputeReport& r) {
    return dump(json{{"variant", std::string(to_string(r.variant))},
                     {"computed_lhs", r.computed_lhs},
                     {"variant_rhs", r.variant_rhs},
                     {"paper_rhs", r.paper_rhs},
                     {"disagreement", r.disagreement},
                     {"tol", r.tol},
                     {"verdict", r.verdict}});
}

std::string to_json(const AsymReport& r) {
    return dump(json{{"n_min", r.n_min}, {"k_max", r.k_max}, {"fitted_C", r.fitted_C}, {"residuals", r.residuals}});
}

std::string to_json(const LocalizationReport& r) {
    return dump(json{{"n0", r.n0},
                     {"found", r.found},
                     {"disc_count", r.disc_count},
                     {"window_counts", r.window_counts},
                     {"violations", r.violations}});
}

std::string to_json(const SweepResult& r, bool with_spectra) {
    std::vector<double> fit_u, fit_w;
    for (int j = 0; j <= r.fit.degree(); ++j) fit_u.push_back(r.fit.u(j));
    for (int j = 1; j <= r.fit.degree(); ++j) fit_w.push_back(r.fit.w(j));
    std::vector<int> trusted;
    for (const auto& s : r.spectra) trusted.push_back(s.n_trusted);
    json j{{"target", std::string(to_string(r.target))},
           {"N", r.N},
           {"K", r.K},
           {"mode", std::string(to_string(r.mode))},
           {"taus", r.taus},
           {"recovered", r.recovered},
           {"accelerated", r.accelerated},
           {"n_trusted", trusted},
           {"n0", r.n0},
           {"sum_branch", r.sum_branch},
           {"wrap_discrepancy", r.wrap_discrepancy},
           {"fit", json{{"u", fit_u}, {"w", fit_w}}}};
    if (with_spectra) {
        json arr = json::array();
        for (const auto& s : r.spectra) arr.push_back(spectrum_json(s));
        j["spectra"] = std::move(arr);
        if (r.reference) j["reference"] = spectrum_json(*r.reference);
    }
    return dump(j);
}

std::string to_csv(const Spectrum& s) {
    std::string out = "n,value,est_abs_err,trusted\n";
    for (std::size_t i = 0; i < s.vals.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        out += std::to_string(n) + "," + csv_number(s.vals[i]) + "," + csv_number(s.est_abs_err[i]) + "," +
               (n <= s.n_trusted ? "1" : "0") + "\n";
    }
    return out;
}

std::string to_csv(const TraceReport& r, const TraceInputs& in) {
    std::string out = "K,S_K,accelerated,rhs,gap\n";
    for (int k = 1; k <= static_cast<int>(r.partial.size()); ++k) {
        const double acc = r.accelerated_at(k, in);
        out += std::to_string(k) + "," + csv_number(r.partial[static_cast<std::size_t>(k - 1)]) + "," +
               csv_number(acc) + "," + csv_number(r.rhs) + "," + csv_number(acc - r.rhs) + "\n";
    }
    return out;
}

std::string to_csv(const AsymReport& r) {
    std::string out = "n,residual,n2_residual\n";
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        out += std::to_string(i + 1) + "," + csv_number(r.residuals[i]) + "," + csv_number(n * n * r.residuals[i]) +
               "\n";
    }
    return out;
}

std::string to_csv(const SweepResult& r) {
    std::string out = "tau,recovered_value,accelerated_sum,n_trusted\n";
    for (std::size_t i = 0; i < r.taus.size(); ++i)
        out += csv_number(r.taus[i]) + "," + csv_number(r.recovered[i]) + "," + csv_number(r.accelerated[i]) + "," +
               std::to_string(r.spectra[i].n_trusted) + "\n";
    return out;
}

}  // namespace tracelab
