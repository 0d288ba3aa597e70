#include "threehalves/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "threehalves/benchmark_schemes.hpp"
#include "threehalves/errors.hpp"
#include "threehalves/explicit_scheme.hpp"
#include "threehalves/fixtures.hpp"

namespace threehalves {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

template <class Sim>
void simulate_block(const Sim& prototype, std::uint64_t seed, std::size_t begin,
                    std::size_t end, std::vector<PathRecord>& out) {
  Sim sim = prototype;
  for (std::size_t j = begin; j < end; ++j) {
    RngStream rng(seed, j);
    out[j] = sim.simulate(rng);
  }
}

template <class Sim>
void simulate_all(const Sim& prototype, std::uint64_t seed, std::size_t count,
                  unsigned workers, std::vector<PathRecord>& out) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                         std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    simulate_block(prototype, seed, 0, count, out);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        simulate_block(prototype, seed, begin, end, out);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<int> subinterval_axis(const SimConfig& config, Scheme scheme) {
  if (scheme == Scheme::weighted) return config.subintervals;
  return {1};
}

}  // namespace

void validate_config(const SimConfig& c) {
  if (c.parameter_sets.empty()) config_error("parameter_set", "at least one set is required");
  for (const auto& name : c.parameter_sets) {
    if (name == kCustomSet) {
      if (!c.custom) config_error("parameter_set", "'custom' needs s0, v0, kappa, theta, epsilon, rho and r");
      try {
        validate(*c.custom);
      } catch (const DomainError& e) {
        config_error("custom parameters", e.what());
      }
      continue;
    }
    parameter_set(name);
    if (name == "PS1" && !c.allow_long) {
      config_error("parameter_set", "PS1 simulates 204 OU components; pass --long to run it");
    }
  }
  if (c.schemes.empty()) config_error("scheme", "at least one scheme is required");
  if (!(c.maturity > 0.0) || !std::isfinite(c.maturity)) config_error("maturity", "must be positive");
  if (!(c.h > 0.0) || !std::isfinite(c.h)) config_error("h", "must be positive");
  {
    const double steps = std::round(c.maturity / c.h);
    if (steps < 1.0 || std::abs(steps * c.h - c.maturity) > 1e-9 * c.maturity) {
      config_error("h", "must divide the maturity into a whole number of steps");
    }
  }
  if (c.subintervals.empty()) config_error("subintervals", "at least one value is required");
  for (int m : c.subintervals) {
    if (m < 1) config_error("subintervals", "must be >= 1");
    if (c.quadrature == QuadratureKind::simpson13 && m % 2 != 0) {
      config_error("subintervals", "Simpson 1/3 rule needs an even count, got " + std::to_string(m));
    }
  }
  if (c.paths.empty()) config_error("paths", "at least one value is required");
  for (auto n : c.paths) {
    if (n < 1) config_error("paths", "must be >= 1");
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) config_error("delta", "must lie in (0, 1)");
  for (double k : c.moneyness) {
    if (!(k > 0.0) || !std::isfinite(k)) config_error("moneyness", "must be positive");
  }
  if (c.repetitions < 1) config_error("repetitions", "must be >= 1");
  if (!(c.phi_c >= 1.0 && c.phi_c <= 2.0)) config_error("phi_c", "must lie in [1, 2]");
}

ModelParams resolve_params(const SimConfig& config, const std::string& set) {
  if (set == kCustomSet) {
    if (!config.custom) config_error("parameter_set", "'custom' has no parameters");
    return *config.custom;
  }
  return parameter_set(set).params;
}

std::uint64_t repetition_seed(std::uint64_t seed, int rep, std::size_t paths) noexcept {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(rep)), paths);
}

SchemeConfig scheme_config(const SimConfig& c, int subintervals) {
  SchemeConfig s;
  s.maturity = c.maturity;
  s.h = c.h;
  s.quadrature = QuadratureRule{c.quadrature, subintervals};
  s.delta = c.delta;
  s.likelihood = c.likelihood;
  s.milstein = c.milstein;
  s.qe = QeConfig{c.phi_c, c.delta};
  return s;
}

std::vector<PathRecord> simulate_paths(Scheme scheme, const SchemeConfig& sc,
                                       const TransformedParams& t, std::uint64_t seed,
                                       std::size_t count, unsigned workers) {
  std::vector<PathRecord> out(count);
  switch (scheme) {
    case Scheme::weighted:
      simulate_all(WeightedSimulator(sc, t), seed, count, workers, out);
      break;
    case Scheme::milstein:
      simulate_all(MilsteinSimulator(sc, t), seed, count, workers, out);
      break;
    case Scheme::qe:
      simulate_all(QeSimulator(sc, t), seed, count, workers, out);
      break;
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (!out[j].finite) {
      std::ostringstream msg;
      msg << to_string(scheme) << " path " << j << " produced a non-finite value";
      throw NumericalFailure(msg.str());
    }
  }
  return out;
}

ExperimentReport run_experiment(const SimConfig& config, const RunOptions& options) {
  validate_config(config);
  ExperimentReport report;
  report.config = config;

  for (const auto& set : config.parameter_sets) {
    const ModelParams params = resolve_params(config, set);
    const TransformedParams t = transform(params);
    for (Scheme scheme : config.schemes) {
      for (int m : subinterval_axis(config, scheme)) {
        const SchemeConfig sc = scheme_config(config, scheme == Scheme::weighted ? m : 2);
        for (std::size_t n : config.paths) {
          RunResult run;
          run.parameter_set = set;
          run.scheme = scheme;
          run.subintervals = m;
          run.paths = n;
          run.ou_count = t.n;
          for (double k : config.moneyness) {
            StrikeResult sr;
            sr.moneyness = k;
            sr.strike = k * params.s0;
            run.strikes.push_back(sr);
          }
          for (int rep = 0; rep < config.repetitions; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const auto paths = simulate_paths(scheme, sc, t, repetition_seed(config.seed, rep, n),
                                              n, options.workers);
            for (auto& sr : run.strikes) {
              sr.repetitions.push_back(estimate_price(paths, PayoffSpec::european_call(sr.strike),
                                                      params.r, config.maturity,
                                                      config.normalization));
            }
            const auto stop = std::chrono::steady_clock::now();
            run.seconds.push_back(std::chrono::duration<double>(stop - start).count());
          }
          for (auto& sr : run.strikes) {
            double sum = 0.0;
            double var = 0.0;
            for (const auto& e : sr.repetitions) {
              sum += e.price;
              var += e.std_error * e.std_error;
            }
            const double reps = static_cast<double>(sr.repetitions.size());
            sr.mean_price = sum / reps;
            sr.std_error = std::sqrt(var) / reps;
            const auto exact = set == kCustomSet
                                   ? std::nullopt
                                   : exact_price(set, config.maturity, sr.moneyness);
            if (exact && sr.repetitions.size() >= 2) {
              sr.error = error_stats(sr.repetitions, *exact);
            }
          }
          report.runs.push_back(std::move(run));
        }
      }
    }
  }
  return report;
}

std::vector<TimingResult> benchmark_timing(const SimConfig& config, const RunOptions& options,
                                           int samples) {
  validate_config(config);
  std::vector<TimingResult> results;
  const int m = config.subintervals.front();
  const std::size_t n = config.paths.front();
  for (const auto& set : config.parameter_sets) {
    const ModelParams params = resolve_params(config, set);
    const TransformedParams t = transform(params);
    for (Scheme scheme : config.schemes) {
      const SchemeConfig sc = scheme_config(config, m);
      std::vector<double> times;
      for (int i = 0; i < samples; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const auto paths =
            simulate_paths(scheme, sc, t, repetition_seed(config.seed, 0, n), n, options.workers);
        for (double k : config.moneyness) {
          estimate_price(paths, PayoffSpec::european_call(k * params.s0), params.r,
                         config.maturity, config.normalization);
        }
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      results.push_back({set, scheme, scheme == Scheme::weighted ? m : 1, n, median(times)});
    }
  }
  return results;
}

}  // namespace threehalves
