#pragma once

#include <span>

namespace threehalves {

enum class QuadratureKind { trapezoid, simpson13 };

// Composite rule over M equal subintervals of one outer step.
struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::simpson13;
  int subintervals = 2;
};

// Throws DomainError for M < 1 and OddSubintervals for Simpson with odd M.
void check_rule(const QuadratureRule& rule);

// Estimate of the integral of 1/U over a step of width `h` from M+1 equally
// spaced samples of U. Throws NonPositiveSample if any sample is <= 0.
double integrate_inverse(std::span<const double> u_values, double h,
                         const QuadratureRule& rule);

// Same as integrate_inverse without validation. Samples are assumed positive
// and to match the rule.
double integrate_inverse_unchecked(std::span<const double> u_values, double h,
                                   QuadratureKind kind) noexcept;

}  // namespace threehalves
