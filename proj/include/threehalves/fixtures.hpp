#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "threehalves/params.hpp"

namespace threehalves {

// Built-in parameter sets PS1..PS5.
struct ParameterSet {
  std::string_view name;
  ModelParams params;
};

std::span<const ParameterSet> parameter_sets();

// Throws ConfigError for an unknown name.
const ParameterSet& parameter_set(std::string_view name);

// Reference call prices used to score estimators.
struct PriceFixture {
  std::string_view parameter_set;
  double maturity;
  double moneyness;  // K / S0
  double price;
};

std::span<const PriceFixture> price_fixtures();

std::optional<double> exact_price(std::string_view parameter_set, double maturity,
                                  double moneyness);

}  // namespace threehalves
