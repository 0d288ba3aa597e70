#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "threehalves/params.hpp"
#include "threehalves/path.hpp"
#include "threehalves/pricing.hpp"

namespace threehalves {

inline constexpr const char* kVersion = "threehalves 1.0.0";

// Name under which inline model parameters are reported.
inline constexpr const char* kCustomSet = "custom";

// Experiment description. Every list is a grid axis; run_experiment visits the
// cartesian product parameter_sets x schemes x subintervals x paths. The
// subinterval axis only applies to the weighted scheme.
struct SimConfig {
  std::vector<std::string> parameter_sets{"PS2"};
  std::optional<ModelParams> custom;  // used by the set named "custom"
  std::vector<Scheme> schemes{Scheme::weighted};
  double maturity = 1.0;
  double h = 0.02;
  std::vector<int> subintervals{2};
  QuadratureKind quadrature = QuadratureKind::simpson13;
  std::vector<std::size_t> paths{50000};
  double delta = 1e-5;
  std::vector<double> moneyness{1.0};  // K / S0
  int repetitions = 20;
  std::uint64_t seed = 42;
  double phi_c = 1.5;
  MilsteinCorrelation milstein = MilsteinCorrelation::correlated;
  LikelihoodCoefficient likelihood = LikelihoodCoefficient::derived;
  Normalization normalization = Normalization::self_normalized;
  bool allow_long = false;  // PS1 (n = 204) is only run when set

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Execution settings that do not change any reported number.
struct RunOptions {
  unsigned workers = 1;
};

// Throws ConfigError naming the first invalid field.
void validate_config(const SimConfig& config);

ModelParams resolve_params(const SimConfig& config, const std::string& set);

// Seed of repetition `rep` for a run with `paths` paths.
std::uint64_t repetition_seed(std::uint64_t seed, int rep, std::size_t paths) noexcept;

// Simulates paths 0..count-1 with RngStream(seed, j). Paths are partitioned into
// contiguous blocks across workers and written by index, so the result does not
// depend on the worker count. Throws NumericalFailure if a path is not finite.
std::vector<PathRecord> simulate_paths(Scheme scheme, const SchemeConfig& scheme_config,
                                       const TransformedParams& transformed,
                                       std::uint64_t seed, std::size_t count,
                                       unsigned workers = 1);

SchemeConfig scheme_config(const SimConfig& config, int subintervals);

struct StrikeResult {
  double moneyness = 0.0;
  double strike = 0.0;
  std::vector<PriceEstimate> repetitions;
  double mean_price = 0.0;  // average over repetitions
  double std_error = 0.0;   // standard error of that average
  std::optional<ErrorStats> error;

  friend bool operator==(const StrikeResult&, const StrikeResult&) = default;
};

struct RunResult {
  std::string parameter_set;
  Scheme scheme = Scheme::weighted;
  int subintervals = 1;
  std::size_t paths = 0;
  int ou_count = 0;
  std::vector<double> seconds;  // wall time per repetition
  std::vector<StrikeResult> strikes;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct ExperimentReport {
  std::string version = kVersion;
  SimConfig config;
  std::vector<RunResult> runs;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

// Throws ConfigError for an invalid config and NumericalFailure when a path
// produces NaN/Inf.
ExperimentReport run_experiment(const SimConfig& config, const RunOptions& options = {});

struct TimingResult {
  std::string parameter_set;
  Scheme scheme = Scheme::weighted;
  int subintervals = 1;
  std::size_t paths = 0;
  double seconds = 0.0;  // median of `samples` full estimates
};

// Wall time of one full price estimate (simulation plus estimation for every
// strike), median of `samples` runs, for each parameter set and scheme. Uses
// the first entries of the subinterval and path axes.
std::vector<TimingResult> benchmark_timing(const SimConfig& config,
                                           const RunOptions& options = {},
                                           int samples = 3);

}  // namespace threehalves
