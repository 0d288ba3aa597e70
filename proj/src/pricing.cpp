#include "threehalves/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "threehalves/errors.hpp"

namespace threehalves {

PayoffSpec PayoffSpec::european_call(double strike) {
  PayoffSpec spec;
  spec.kind = PayoffKind::european_call;
  spec.strike = strike;
  return spec;
}

PayoffSpec PayoffSpec::path(std::function<double(const PathRecord&, const PathTrace*)> f) {
  PayoffSpec spec;
  spec.kind = PayoffKind::path_functional;
  spec.functional = std::move(f);
  return spec;
}

double payoff_european_call(double s_terminal, double strike, double r,
                            double maturity) noexcept {
  return std::exp(-r * maturity) * std::max(s_terminal - strike, 0.0);
}

PriceEstimate estimate_price(std::span<const PathRecord> paths, const PayoffSpec& payoff,
                             double r, double maturity, Normalization normalization,
                             std::span<const PathTrace> traces) {
  if (paths.empty()) throw EmptyPathSet("no paths to estimate from");
  if (payoff.kind == PayoffKind::european_call && !(payoff.strike > 0.0)) {
    throw DomainError("strike must be positive");
  }
  if (payoff.kind == PayoffKind::path_functional && !payoff.functional) {
    throw DomainError("path functional payoff has no function");
  }
  if (!traces.empty() && traces.size() != paths.size()) {
    throw DomainError("need one trace per path");
  }

  const std::size_t n = paths.size();
  std::vector<double> values(n);
  PriceEstimate est;
  est.n_paths = n;
  double weighted = 0.0;
  double w2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const PathRecord& p = paths[j];
    if (!(p.l > 0.0)) throw DomainError("likelihood weights must be positive");
    double x = 0.0;
    if (p.survived) {
      x = payoff.kind == PayoffKind::european_call
              ? payoff_european_call(p.s, payoff.strike, r, maturity)
              : payoff.functional(p, traces.empty() ? nullptr : &traces[j]);
    } else {
      ++est.n_stopped;
    }
    values[j] = x;
    est.weight_sum += p.l;
    w2 += p.l * p.l;
    weighted += p.l * x;
  }
  est.ess = est.weight_sum * est.weight_sum / w2;

  const double nd = static_cast<double>(n);
  if (normalization == Normalization::self_normalized) {
    est.price = weighted / est.weight_sum;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = paths[j].l * (values[j] - est.price);
      acc += dev * dev;
    }
    est.std_error = std::sqrt(acc) / est.weight_sum;
  } else {
    est.price = weighted / nd;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = paths[j].l * values[j] - est.price;
      acc += dev * dev;
    }
    est.std_error = n > 1 ? std::sqrt(acc / (nd - 1.0) / nd) : 0.0;
  }
  return est;
}

ErrorStats error_stats(std::span<const double> estimates, double exact) {
  if (!(exact > 0.0)) throw DomainError("exact price must be positive");
  if (estimates.size() < 2) throw DomainError("need at least two estimates");
  double acc = 0.0;
  for (double e : estimates) acc += (exact - e) * (exact - e);
  ErrorStats stats;
  stats.exact_price = exact;
  stats.n_repetitions = estimates.size();
  stats.mse = acc / static_cast<double>(estimates.size());
  stats.rel_mse = stats.mse / exact;
  return stats;
}

ErrorStats error_stats(std::span<const PriceEstimate> estimates, double exact) {
  std::vector<double> prices;
  prices.reserve(estimates.size());
  for (const auto& e : estimates) prices.push_back(e.price);
  return error_stats(prices, exact);
}

}  // namespace threehalves
