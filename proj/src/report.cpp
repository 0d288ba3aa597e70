#include "threehalves/report.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "threehalves/errors.hpp"

namespace threehalves {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 7> kParamKeys{"s0", "v0", "kappa", "theta",
                                               "epsilon", "rho", "r"};

template <class T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key + ": unexpected type " + std::string(value.type_name()));
  }
}

template <class T>
std::vector<T> get_list(const json& value, const std::string& key) {
  if (value.is_array()) {
    std::vector<T> out;
    for (const auto& v : value) out.push_back(get_as<T>(v, key));
    return out;
  }
  return {get_as<T>(value, key)};
}

double get_number(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError(key + ": expected a number");
  return value.get<double>();
}

std::uint64_t get_seed(const json& value) {
  if (!value.is_number_integer()) throw ConfigError("seed: expected an unsigned integer");
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  const auto v = value.get<std::int64_t>();
  if (v < 0) throw ConfigError("seed: expected an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::size_t> get_counts(const json& value, const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& v : value.is_array() ? value : json::array({value})) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      throw ConfigError(key + ": expected positive integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

QuadratureKind parse_quadrature(const std::string& s) {
  if (s == "simpson13") return QuadratureKind::simpson13;
  if (s == "trapezoid") return QuadratureKind::trapezoid;
  throw ConfigError("quadrature: unknown value '" + s + "'");
}

const char* quadrature_name(QuadratureKind k) {
  return k == QuadratureKind::simpson13 ? "simpson13" : "trapezoid";
}

MilsteinCorrelation parse_milstein(const std::string& s) {
  if (s == "correlated") return MilsteinCorrelation::correlated;
  if (s == "independent") return MilsteinCorrelation::independent;
  throw ConfigError("milstein_correlation: unknown value '" + s + "'");
}

const char* milstein_name(MilsteinCorrelation m) {
  return m == MilsteinCorrelation::correlated ? "correlated" : "independent";
}

LikelihoodCoefficient parse_likelihood(const std::string& s) {
  if (s == "derived") return LikelihoodCoefficient::derived;
  if (s == "printed") return LikelihoodCoefficient::printed;
  throw ConfigError("l_coefficient: unknown value '" + s + "'");
}

const char* likelihood_name(LikelihoodCoefficient l) {
  return l == LikelihoodCoefficient::derived ? "derived" : "printed";
}

Normalization parse_normalization(const std::string& s) {
  if (s == "self_normalized") return Normalization::self_normalized;
  if (s == "unnormalized") return Normalization::unnormalized;
  throw ConfigError("normalization: unknown value '" + s + "'");
}

const char* normalization_name(Normalization n) {
  return n == Normalization::self_normalized ? "self_normalized" : "unnormalized";
}

json estimate_to_json(const PriceEstimate& e) {
  return {{"price", e.price},         {"std_error", e.std_error}, {"weight_sum", e.weight_sum},
          {"ess", e.ess},             {"n_paths", e.n_paths},     {"n_stopped", e.n_stopped}};
}

PriceEstimate estimate_from_json(const json& j) {
  PriceEstimate e;
  e.price = j.at("price").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.weight_sum = j.at("weight_sum").get<double>();
  e.ess = j.at("ess").get<double>();
  e.n_paths = j.at("n_paths").get<std::size_t>();
  e.n_stopped = j.at("n_stopped").get<std::size_t>();
  return e;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

SimConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  SimConfig c;
  ModelParams custom;
  int custom_keys = 0;
  for (const auto& [key, value] : doc.items()) {
    if (key == "parameter_set") {
      c.parameter_sets = get_list<std::string>(value, key);
    } else if (key == "scheme") {
      c.schemes.clear();
      for (const auto& s : get_list<std::string>(value, key)) c.schemes.push_back(parse_scheme(s));
    } else if (key == "maturity") {
      c.maturity = get_number(value, key);
    } else if (key == "h") {
      c.h = get_number(value, key);
    } else if (key == "subintervals") {
      c.subintervals = get_list<int>(value, key);
    } else if (key == "quadrature") {
      c.quadrature = parse_quadrature(get_as<std::string>(value, key));
    } else if (key == "paths") {
      c.paths = get_counts(value, key);
    } else if (key == "delta") {
      c.delta = get_number(value, key);
    } else if (key == "moneyness") {
      c.moneyness = get_list<double>(value, key);
    } else if (key == "repetitions") {
      c.repetitions = get_as<int>(value, key);
    } else if (key == "seed") {
      c.seed = get_seed(value);
    } else if (key == "phi_c") {
      c.phi_c = get_number(value, key);
    } else if (key == "milstein_correlation") {
      c.milstein = parse_milstein(get_as<std::string>(value, key));
    } else if (key == "l_coefficient") {
      c.likelihood = parse_likelihood(get_as<std::string>(value, key));
    } else if (key == "normalization") {
      c.normalization = parse_normalization(get_as<std::string>(value, key));
    } else if (key == "long") {
      c.allow_long = get_as<bool>(value, key);
    } else if (key == "s0") {
      custom.s0 = get_number(value, key), ++custom_keys;
    } else if (key == "v0") {
      custom.v0 = get_number(value, key), ++custom_keys;
    } else if (key == "kappa") {
      custom.kappa = get_number(value, key), ++custom_keys;
    } else if (key == "theta") {
      custom.theta = get_number(value, key), ++custom_keys;
    } else if (key == "epsilon") {
      custom.epsilon = get_number(value, key), ++custom_keys;
    } else if (key == "rho") {
      custom.rho = get_number(value, key), ++custom_keys;
    } else if (key == "r") {
      custom.r = get_number(value, key), ++custom_keys;
    } else {
      throw ConfigError(key + ": unknown key");
    }
  }
  if (custom_keys > 0) {
    if (custom_keys != static_cast<int>(kParamKeys.size())) {
      throw ConfigError("custom parameters: all of s0, v0, kappa, theta, epsilon, rho, r are required");
    }
    c.custom = custom;
  }
  return c;
}

json config_to_json(const SimConfig& c) {
  json j;
  j["parameter_set"] = c.parameter_sets;
  json schemes = json::array();
  for (Scheme s : c.schemes) schemes.push_back(std::string(to_string(s)));
  j["scheme"] = schemes;
  j["maturity"] = c.maturity;
  j["h"] = c.h;
  j["subintervals"] = c.subintervals;
  j["quadrature"] = quadrature_name(c.quadrature);
  j["paths"] = c.paths;
  j["delta"] = c.delta;
  j["moneyness"] = c.moneyness;
  j["repetitions"] = c.repetitions;
  j["seed"] = c.seed;
  j["phi_c"] = c.phi_c;
  j["milstein_correlation"] = milstein_name(c.milstein);
  j["l_coefficient"] = likelihood_name(c.likelihood);
  j["normalization"] = normalization_name(c.normalization);
  j["long"] = c.allow_long;
  if (c.custom) {
    const ModelParams& p = *c.custom;
    j["s0"] = p.s0;
    j["v0"] = p.v0;
    j["kappa"] = p.kappa;
    j["theta"] = p.theta;
    j["epsilon"] = p.epsilon;
    j["rho"] = p.rho;
    j["r"] = p.r;
  }
  return j;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return config_from_json(doc);
}

json report_to_json(const ExperimentReport& report) {
  json runs = json::array();
  for (const auto& run : report.runs) {
    json strikes = json::array();
    for (const auto& sr : run.strikes) {
      json reps = json::array();
      for (const auto& e : sr.repetitions) reps.push_back(estimate_to_json(e));
      json s{{"moneyness", sr.moneyness}, {"strike", sr.strike},     {"mean_price", sr.mean_price},
             {"std_error", sr.std_error}, {"repetitions", reps}};
      if (sr.error) {
        s["error"] = {{"exact_price", sr.error->exact_price},
                      {"mse", sr.error->mse},
                      {"rel_mse", sr.error->rel_mse},
                      {"n_repetitions", sr.error->n_repetitions}};
      }
      strikes.push_back(std::move(s));
    }
    runs.push_back({{"parameter_set", run.parameter_set},
                    {"scheme", std::string(to_string(run.scheme))},
                    {"subintervals", run.subintervals},
                    {"paths", run.paths},
                    {"ou_count", run.ou_count},
                    {"seconds", run.seconds},
                    {"strikes", strikes}});
  }
  return {{"version", report.version}, {"config", config_to_json(report.config)}, {"runs", runs}};
}

ExperimentReport report_from_json(const json& doc) {
  ExperimentReport report;
  try {
    report.version = doc.at("version").get<std::string>();
    report.config = config_from_json(doc.at("config"));
    for (const auto& r : doc.at("runs")) {
      RunResult run;
      run.parameter_set = r.at("parameter_set").get<std::string>();
      run.scheme = parse_scheme(r.at("scheme").get<std::string>());
      run.subintervals = r.at("subintervals").get<int>();
      run.paths = r.at("paths").get<std::size_t>();
      run.ou_count = r.at("ou_count").get<int>();
      run.seconds = r.at("seconds").get<std::vector<double>>();
      for (const auto& s : r.at("strikes")) {
        StrikeResult sr;
        sr.moneyness = s.at("moneyness").get<double>();
        sr.strike = s.at("strike").get<double>();
        sr.mean_price = s.at("mean_price").get<double>();
        sr.std_error = s.at("std_error").get<double>();
        for (const auto& e : s.at("repetitions")) sr.repetitions.push_back(estimate_from_json(e));
        if (s.contains("error")) {
          const auto& e = s.at("error");
          sr.error = ErrorStats{e.at("exact_price").get<double>(), e.at("mse").get<double>(),
                                e.at("rel_mse").get<double>(),
                                e.at("n_repetitions").get<std::size_t>()};
        }
        run.strikes.push_back(std::move(sr));
      }
      report.runs.push_back(std::move(run));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "parameter_set,scheme,subintervals,paths,repetitions,moneyness,strike,price,"
         "std_error,exact,mse,rel_mse_pct,ess,n_stopped,seconds\n";
  for (const auto& run : report.runs) {
    double seconds = 0.0;
    for (double s : run.seconds) seconds += s;
    if (!run.seconds.empty()) seconds /= static_cast<double>(run.seconds.size());
    for (const auto& sr : run.strikes) {
      double ess = 0.0;
      std::size_t stopped = 0;
      for (const auto& e : sr.repetitions) {
        ess += e.ess;
        stopped += e.n_stopped;
      }
      if (!sr.repetitions.empty()) ess /= static_cast<double>(sr.repetitions.size());
      out << run.parameter_set << ',' << to_string(run.scheme) << ',' << run.subintervals << ','
          << run.paths << ',' << sr.repetitions.size() << ',' << fmt(sr.moneyness) << ','
          << fmt(sr.strike) << ',' << fmt(sr.mean_price) << ',' << fmt(sr.std_error) << ',';
      if (sr.error) {
        out << fmt(sr.error->exact_price) << ',' << fmt(sr.error->mse) << ','
            << fmt(sr.error->rel_mse_pct()) << ',';
      } else {
        out << ",,,";
      }
      out << fmt(ess) << ',' << stopped << ',' << fmt(seconds) << '\n';
    }
  }
  return out.str();
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) return report_csv(report);
  return report_to_json(report).dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace threehalves
