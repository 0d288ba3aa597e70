#include "threehalves/fixtures.hpp"

#include <array>
#include <cmath>

#include "threehalves/errors.hpp"

namespace threehalves {

namespace {

//                                        s0     v0    kappa  theta  eps   rho    r
constexpr std::array<ParameterSet, 5> kSets{{
    {"PS1", ModelParams{1.0, 1.0, 2.0, 1.5, 0.2, -0.5, 0.05}},
    {"PS2", ModelParams{100.0, 0.06, 22.84, 0.218, 8.56, -0.99, 0.00}},
    {"PS3", ModelParams{100.0, 0.06, 18.32, 0.218, 8.56, -0.99, 0.00}},
    {"PS4", ModelParams{100.0, 0.06, 19.76, 0.218, 3.20, -0.99, 0.00}},
    {"PS5", ModelParams{100.0, 0.06, 20.48, 0.218, 3.20, -0.99, 0.00}},
}};

constexpr std::array<PriceFixture, 15> kPrices{{
    {"PS1", 1.0, 1.00, 0.4431},
    {"PS2", 0.5, 1.00, 7.3864},
    {"PS3", 0.5, 1.00, 7.0422},
    {"PS2", 1.0, 0.95, 10.364},
    {"PS2", 1.0, 1.00, 7.386},
    {"PS2", 1.0, 1.05, 4.938},
    {"PS3", 1.0, 0.95, 10.055},
    {"PS3", 1.0, 1.00, 7.042},
    {"PS3", 1.0, 1.05, 4.586},
    {"PS4", 1.0, 0.95, 11.657},
    {"PS4", 1.0, 1.00, 8.926},
    {"PS4", 1.0, 1.05, 6.636},
    {"PS5", 1.0, 0.95, 11.724},
    {"PS5", 1.0, 1.00, 8.999},
    {"PS5", 1.0, 1.05, 6.710},
}};

bool close(double a, double b) { return std::abs(a - b) <= 1e-9; }

}  // namespace

std::span<const ParameterSet> parameter_sets() { return kSets; }

const ParameterSet& parameter_set(std::string_view name) {
  for (const auto& set : kSets) {
    if (set.name == name) return set;
  }
  throw ConfigError("unknown parameter set '" + std::string(name) +
                    "' (expected PS1..PS5)");
}

std::span<const PriceFixture> price_fixtures() { return kPrices; }

std::optional<double> exact_price(std::string_view set, double maturity,
                                  double moneyness) {
  for (const auto& f : kPrices) {
    if (f.parameter_set == set && close(f.maturity, maturity) &&
        close(f.moneyness, moneyness)) {
      return f.price;
    }
  }
  return std::nullopt;
}

}  // namespace threehalves
