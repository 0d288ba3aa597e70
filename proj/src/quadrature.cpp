#include "threehalves/quadrature.hpp"

#include <string>

#include "threehalves/errors.hpp"

namespace threehalves {

void check_rule(const QuadratureRule& rule) {
  if (rule.subintervals < 1) {
    throw DomainError("quadrature needs at least one subinterval");
  }
  if (rule.kind == QuadratureKind::simpson13 && rule.subintervals % 2 != 0) {
    throw OddSubintervals("Simpson 1/3 rule needs an even number of subintervals, got " +
                          std::to_string(rule.subintervals));
  }
}

double integrate_inverse_unchecked(std::span<const double> u, double h,
                                   QuadratureKind kind) noexcept {
  const std::size_t m = u.size() - 1;
  const double dx = h / static_cast<double>(m);
  if (kind == QuadratureKind::trapezoid) {
    double sum = 0.5 * (1.0 / u.front() + 1.0 / u.back());
    for (std::size_t i = 1; i < m; ++i) sum += 1.0 / u[i];
    return dx * sum;
  }
  double sum = 1.0 / u.front() + 1.0 / u.back();
  for (std::size_t i = 1; i < m; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) / u[i];
  return dx / 3.0 * sum;
}

double integrate_inverse(std::span<const double> u, double h,
                         const QuadratureRule& rule) {
  check_rule(rule);
  if (u.size() != static_cast<std::size_t>(rule.subintervals) + 1) {
    throw DomainError("expected " + std::to_string(rule.subintervals + 1) +
                      " samples, got " + std::to_string(u.size()));
  }
  for (double v : u) {
    if (!(v > 0.0)) throw NonPositiveSample("U sample must be positive");
  }
  return integrate_inverse_unchecked(u, h, rule.kind);
}

}  // namespace threehalves
