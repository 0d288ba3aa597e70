// Command line front end: prices calls under the 3/2 model and writes reports.
//
//   threehalves price --config exp.json [--scheme S] [--set PSk] [--n N] [--h H]
//                     [--m M] [--seed X] [--out report.csv] [--json report.json]
//                     [--long] [--strict-paper-milstein] [--l-coefficient derived|printed]
//   threehalves timing --config exp.json [...same overrides...]
//
// Exit codes: 0 success, 1 other error, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "threehalves/errors.hpp"
#include "threehalves/harness.hpp"
#include "threehalves/report.hpp"

namespace {

using namespace threehalves;

struct Overrides {
  std::string config_path;
  std::optional<std::string> scheme;
  std::optional<std::string> set;
  std::optional<std::size_t> paths;
  std::optional<double> h;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<double> maturity;
  std::optional<std::string> l_coefficient;
  std::string csv_out;
  std::string json_out;
  bool allow_long = false;
  bool strict_milstein = false;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->set_help_flag("--help", "print this help and exit");
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--scheme", o.scheme, "weighted, milstein or qe");
  cmd->add_option("--set", o.set, "parameter set PS1..PS5");
  cmd->add_option("--n", o.paths, "paths per estimate");
  cmd->add_option("--h", o.h, "outer time step");
  cmd->add_option("--m", o.m, "quadrature subintervals per step");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--reps", o.reps, "repetitions per estimate");
  cmd->add_option("--maturity", o.maturity, "option maturity in years");
  cmd->add_option("--l-coefficient", o.l_coefficient, "derived or printed")
      ->check(CLI::IsMember({"derived", "printed"}));
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--long", o.allow_long, "allow PS1 (204 OU components)");
  cmd->add_flag("--strict-paper-milstein", o.strict_milstein,
                "draw the Milstein stock shock independently of the variance shock");
}

SimConfig build_config(const Overrides& o) {
  SimConfig c = o.config_path.empty() ? SimConfig{} : load_config(o.config_path);
  if (o.scheme) c.schemes = {parse_scheme(*o.scheme)};
  if (o.set) c.parameter_sets = {*o.set};
  if (o.paths) c.paths = {*o.paths};
  if (o.h) c.h = *o.h;
  if (o.m) c.subintervals = {*o.m};
  if (o.seed) c.seed = *o.seed;
  if (o.reps) c.repetitions = *o.reps;
  if (o.maturity) c.maturity = *o.maturity;
  if (o.l_coefficient) {
    c.likelihood = *o.l_coefficient == "printed" ? LikelihoodCoefficient::printed
                                                 : LikelihoodCoefficient::derived;
  }
  if (o.allow_long) c.allow_long = true;
  if (o.strict_milstein) c.milstein = MilsteinCorrelation::independent;
  return c;
}

void print_summary(const ExperimentReport& report) {
  std::printf("%-6s %-9s %2s %8s %6s %10s %10s %10s %12s %9s\n", "set", "scheme", "M", "N",
              "K/S0", "price", "std_err", "exact", "rel_mse_%", "sec/rep");
  for (const auto& run : report.runs) {
    double secs = 0.0;
    for (double s : run.seconds) secs += s;
    secs /= static_cast<double>(std::max<std::size_t>(run.seconds.size(), 1));
    for (const auto& sr : run.strikes) {
      std::printf("%-6s %-9s %2d %8zu %6.3f %10.5f %10.5f ", run.parameter_set.c_str(),
                  std::string(to_string(run.scheme)).c_str(), run.subintervals, run.paths,
                  sr.moneyness, sr.mean_price, sr.std_error);
      if (sr.error) {
        std::printf("%10.4f %12.5f ", sr.error->exact_price, sr.error->rel_mse_pct());
      } else {
        std::printf("%10s %12s ", "-", "-");
      }
      std::printf("%9.3f\n", secs);
    }
  }
}

int run_price(const Overrides& o) {
  const SimConfig config = build_config(o);
  const ExperimentReport report = run_experiment(config, RunOptions{o.workers});
  print_summary(report);
  if (!o.csv_out.empty()) write_text(o.csv_out, emit_report(report, ReportFormat::csv));
  if (!o.json_out.empty()) write_text(o.json_out, emit_report(report, ReportFormat::json));
  return 0;
}

int run_timing(const Overrides& o) {
  const SimConfig config = build_config(o);
  const auto results = benchmark_timing(config, RunOptions{o.workers});
  std::printf("%-6s %-9s %2s %8s %12s\n", "set", "scheme", "M", "N", "median_sec");
  for (const auto& r : results) {
    std::printf("%-6s %-9s %2d %8zu %12.4f\n", r.parameter_set.c_str(),
                std::string(to_string(r.scheme)).c_str(), r.subintervals, r.paths, r.seconds);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo pricing under the 3/2 stochastic volatility model"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  Overrides price_opts;
  auto* price = app.add_subcommand("price", "estimate call prices and write reports");
  add_common(price, price_opts);
  price->add_option("--out", price_opts.csv_out, "CSV report path");
  price->add_option("--json", price_opts.json_out, "JSON report path");

  Overrides timing_opts;
  auto* timing = app.add_subcommand("timing", "median-of-3 wall time per estimate");
  add_common(timing, timing_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*price) return run_price(price_opts);
    return run_timing(timing_opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
