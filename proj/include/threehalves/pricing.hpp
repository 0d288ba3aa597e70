#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <span>

#include "threehalves/path.hpp"

namespace threehalves {

enum class PayoffKind { european_call, path_functional };

// Discounted payoff. A path functional receives the terminal record and, when
// trajectories were recorded, the trace of the same path (otherwise nullptr).
struct PayoffSpec {
  PayoffKind kind = PayoffKind::european_call;
  double strike = 0.0;
  std::function<double(const PathRecord&, const PathTrace*)> functional;

  static PayoffSpec european_call(double strike);
  static PayoffSpec path(std::function<double(const PathRecord&, const PathTrace*)> f);
};

// e^{-rT} max(s - K, 0).
double payoff_european_call(double s_terminal, double strike, double r,
                            double maturity) noexcept;

enum class Normalization {
  self_normalized,  // divide by the sum of weights
  unnormalized,     // divide by N (diagnostic)
};

struct PriceEstimate {
  double price = 0.0;
  double std_error = 0.0;
  double weight_sum = 0.0;
  double ess = 0.0;  // (sum w)^2 / sum w^2
  std::size_t n_paths = 0;
  std::size_t n_stopped = 0;

  friend bool operator==(const PriceEstimate&, const PriceEstimate&) = default;
};

struct ErrorStats {
  double exact_price = 0.0;
  double mse = 0.0;
  double rel_mse = 0.0;  // mse / exact_price
  std::size_t n_repetitions = 0;

  double rel_mse_pct() const noexcept { return 100.0 * rel_mse; }

  friend bool operator==(const ErrorStats&, const ErrorStats&) = default;
};

// Importance-sampling estimate
//   sum_j phi_j L_j 1{tau_j > T} / sum_j L_j
// folded in path-index order. Stopped paths add their weight to the denominator
// only. The standard error is the delta-method error of the ratio
//   sqrt(sum_j w_j^2 (x_j - price)^2) / sum_j w_j.
// Throws EmptyPathSet for no paths and DomainError for a non-positive weight,
// a non-positive call strike, or traces whose count differs from the paths.
PriceEstimate estimate_price(std::span<const PathRecord> paths, const PayoffSpec& payoff,
                             double r, double maturity,
                             Normalization normalization = Normalization::self_normalized,
                             std::span<const PathTrace> traces = {});

// mse = mean over runs of (exact - estimate)^2. Throws DomainError if exact <= 0
// or fewer than two estimates are given.
ErrorStats error_stats(std::span<const double> estimates, double exact);
ErrorStats error_stats(std::span<const PriceEstimate> estimates, double exact);

}  // namespace threehalves
