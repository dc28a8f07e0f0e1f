#pragma once

// JSON and CSV forms of coefficients and reports. CSV numbers are written with
// 17 significant digits so equal inputs give byte-identical files.
//
// Coefficient JSON: {"u": [u0, u1, ...], "w": [w1, w2, ...]}, "w" optional.

#include <string>
#include <string_view>

#include "tracelab/coeffs.hpp"
#include "tracelab/eigen.hpp"
#include "tracelab/inverse.hpp"
#include "tracelab/traces.hpp"

namespace tracelab {

/// Throws InputError with "<source>:<line>:<column>" or the offending field.
Coefficient parse_coefficient_json(std::string_view text, std::string_view source = "<input>");
Coefficient load_coefficient(const std::string& path);
std::string coefficient_to_json(const Coefficient& f);

std::string csv_number(double v);

std::string to_json(const Spectrum& s);
std::string to_json(const TraceReport& r);
std::string to_json(const DisputeReport& r);
std::string to_json(const AsymReport& r);
std::string to_json(const LocalizationReport& r);
std::string to_json(const SweepResult& r, bool with_spectra = false);

/// n, value, est_abs_err, trusted
std::string to_csv(const Spectrum& s);
/// K, S_K, accelerated, rhs, gap; one row per truncation k = 1..K.
std::string to_csv(const TraceReport& r, const TraceInputs& in);
/// n, residual, n2_residual
std::string to_csv(const AsymReport& r);
/// tau, recovered_value, accelerated_sum, n_trusted
std::string to_csv(const SweepResult& r);

}  // namespace tracelab
