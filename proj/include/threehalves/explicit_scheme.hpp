#pragma once

#include <span>
#include <vector>

#include "threehalves/params.hpp"
#include "threehalves/path.hpp"
#include "threehalves/rng.hpp"

namespace threehalves {

// Components Y(1..n) of the OU vector whose squared norm is U.
struct OuState {
  std::vector<double> y;

  // Y0(i) = sqrt(U0 / n) for every component.
  static OuState initial(const TransformedParams& transformed);
};

// Exact OU transition y' = alpha y + sqrt(sigma2) z, in place.
void ou_step(std::span<double> y, double alpha, double sigma2,
             std::span<const double> normals) noexcept;
OuState ou_step(OuState state, double alpha, double sigma2,
                std::span<const double> normals);

// U = sum of y_i^2.
double u_from_ou(std::span<const double> y) noexcept;

// Stock recursion over one outer step:
//   s_t exp{ (rho/eps_t) ln(u_next/u_t) + a h - b I + sqrt(1-rho^2) sqrt(I) z }
// where I approximates the integral of 1/U over the step.
// Throws NonPositiveU if u_t or u_next is not positive.
double s_step(double s_t, double u_t, double u_next, double int_u_step, double z,
              const RecursionConstants& k);

// Likelihood recursion
//   l_t exp{ c ( ln(u_next/u_t) + kappa_t dt_eff + d I ) }
// with dt_eff = min(h, tau - t). Returns l_t unchanged when c == 0.
double l_step(double l_t, double u_t, double u_next, double int_u_step,
              double dt_eff, const RecursionConstants& k);

// Brownian increment of W1 = sum_i int Y_i / sqrt(U) dZ_i over one fine step,
// recovering each dZ_i from the exact OU transition y_after = alpha y_before + xi.
double w1_increment(std::span<const double> y_before, std::span<const double> y_after,
                    double dt, const OuStepConstants& ou, double eps_t) noexcept;

// Likelihood evaluated directly from its Girsanov exponent on a fine grid:
//   exp{ -(kappa_t (theta_n - theta_t) / eps_t) sum u^{-1/2} dW1
//        - (kappa_t^2 / 2) ((theta_n - theta_t) / eps_t)^2 sum u^{-1} dt }
// with left-point sums. u_path has one more entry than w1_increments.
// Throws NonPositiveU for a non-positive sample.
double l_ref(std::span<const double> u_path, std::span<const double> w1_increments,
             double dt, const TransformedParams& transformed);

// Weighted explicit simulation. Each outer step advances the OU vector through M
// fine steps of width h/M, integrates 1/U over the fine samples, then updates the
// stock with one normal draw and the likelihood deterministically. A path stops
// the first time U <= delta at a fine grid point; the likelihood is updated up to
// the stopping time and then frozen.
//
// Draws per outer step: M * n + 1.
class WeightedSimulator {
public:
  WeightedSimulator(const SchemeConfig& config, const TransformedParams& transformed);

  PathRecord simulate(RngStream& rng, PathTrace* trace = nullptr);

  const RecursionConstants& constants() const noexcept { return outer_; }
  int steps() const noexcept { return steps_; }

private:
  SchemeConfig config_;
  TransformedParams model_;
  RecursionConstants outer_;
  OuStepConstants fine_;
  int steps_;
  std::vector<double> y_;
  std::vector<double> y_prev_;
  std::vector<double> normals_;
  std::vector<double> u_fine_;
};

PathRecord simulate_path(const SchemeConfig& config, const TransformedParams& transformed,
                         RngStream& rng, PathTrace* trace = nullptr);

}  // namespace threehalves
