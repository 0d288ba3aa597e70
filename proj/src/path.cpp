#include "threehalves/path.hpp"

#include <cmath>
#include <string>

#include "threehalves/errors.hpp"

namespace threehalves {

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::weighted:
      return "weighted";
    case Scheme::milstein:
      return "milstein";
    case Scheme::qe:
      return "qe";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "weighted") return Scheme::weighted;
  if (name == "milstein") return Scheme::milstein;
  if (name == "qe") return Scheme::qe;
  throw ConfigError("scheme: unknown value '" + std::string(name) +
                    "' (expected weighted, milstein or qe)");
}

int step_count(const SchemeConfig& config) {
  if (!(config.maturity > 0.0) || !std::isfinite(config.maturity)) {
    throw DomainError("maturity must be positive");
  }
  if (!(config.h > 0.0) || !std::isfinite(config.h)) {
    throw DomainError("step h must be positive");
  }
  const double steps = std::round(config.maturity / config.h);
  if (steps < 1.0 || std::abs(steps * config.h - config.maturity) > 1e-9 * config.maturity) {
    throw DomainError("step h must divide the maturity into a whole number of steps");
  }
  return static_cast<int>(steps);
}

}  // namespace threehalves
