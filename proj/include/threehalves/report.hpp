#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "threehalves/harness.hpp"

namespace threehalves {

// Config documents are flat JSON objects. Keys:
//   parameter_set   "PS1".."PS5" | "custom" | list of those
//   s0 v0 kappa theta epsilon rho r   inline parameters for "custom"
//   scheme          "weighted" | "milstein" | "qe" | list
//   maturity h delta phi_c            numbers
//   subintervals    int | list of ints
//   paths           int | list of ints
//   moneyness       number | list of numbers (K / S0)
//   quadrature      "simpson13" | "trapezoid"
//   repetitions     int
//   seed            unsigned 64-bit int
//   milstein_correlation  "correlated" | "independent"
//   l_coefficient   "derived" | "printed"
//   normalization   "self_normalized" | "unnormalized"
//   long            bool
// Missing keys keep their defaults. Unknown keys and type mismatches throw
// ConfigError naming the key.
SimConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SimConfig& config);

// Reads a config file; throws IoError if it cannot be read and ConfigError if
// it is not a JSON object.
SimConfig load_config(const std::filesystem::path& path);

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& doc);

// CSV columns, one row per run x strike:
//   parameter_set, scheme, subintervals, paths, repetitions, moneyness, strike,
//   price, std_error, exact, mse, rel_mse_pct, ess, n_stopped, seconds
// price/std_error are the repetition average and its standard error; ess is the
// mean effective sample size; n_stopped sums over repetitions; seconds is the
// mean wall time per repetition and always the last column. exact, mse and
// rel_mse_pct are empty when no fixture exists.
std::string report_csv(const ExperimentReport& report);

enum class ReportFormat { csv, json };

std::string emit_report(const ExperimentReport& report, ReportFormat format);

// Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace threehalves
