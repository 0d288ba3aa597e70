#pragma once

#include "threehalves/params.hpp"
#include "threehalves/path.hpp"
#include "threehalves/rng.hpp"

namespace threehalves {

// --- Milstein ---------------------------------------------------------------

// u_next = u_t + kappa_t (theta_t - ub) h + eps_t sqrt(ub h) z1 + eps_t^2 (z1^2 - 1) h / 4
// with ub = max(u_t, 0). Negative results are allowed; the next step clamps them.
double milstein_u_step(double u_t, double h, const TransformedParams& transformed,
                       double z1) noexcept;

// Log-Euler stock step s_t exp{(r - 1/(2 ub)) h + sqrt(h / ub) z2}.
// In correlated mode z2 = rho z1 + sqrt(1 - rho^2) z_perp, otherwise z2 = z_perp.
// Throws NonPositiveU if u_bar <= 0.
double milstein_s_step(double s_t, double u_bar, double h, double r, double rho,
                       double z1, double z_perp,
                       MilsteinCorrelation mode = MilsteinCorrelation::correlated);

// --- Quadratic exponential ----------------------------------------------------

// Conditional mean m and variance s2 of U_{t+h} given U_t under the CIR law with
// the model's own mean level, and phi = s2 / m^2.
struct QeMoments {
  double m = 0.0;
  double s2 = 0.0;
  double phi = 0.0;
};

QeMoments qe_moments(double u_t, double h, const TransformedParams& transformed) noexcept;

// a (b + z)^2 with b^2 = 2/phi - 1 + sqrt(2/phi) sqrt(2/phi - 1), a = m / (1 + b^2).
double qe_quadratic(double m, double s2, double z) noexcept;

// Inverse CDF of the mixture p * delta_0 + (1 - p) * Exp(beta):
// p = (phi - 1)/(phi + 1), beta = (1 - p)/m, zero when x <= p.
double qe_exponential(double m, double s2, double x) noexcept;

// One QE variance step driven by a single uniform. The quadratic branch maps the
// uniform through the inverse normal CDF. The result is floored at qe.u_floor.
// Throws DomainError if u_t <= 0.
double qe_u_step(double u_t, double h, const TransformedParams& transformed,
                 const QeConfig& qe, double uniform);

// Stock step shared with the weighted scheme, with the time integral of 1/U
// taken by the two-point trapezoid rule.
double qe_s_step(double s_t, double u_t, double u_next, const RecursionConstants& k,
                 double z);

// Draws per step: 2 (z1, z_perp).
class MilsteinSimulator {
public:
  MilsteinSimulator(const SchemeConfig& config, const TransformedParams& transformed);
  PathRecord simulate(RngStream& rng, PathTrace* trace = nullptr) const;

private:
  SchemeConfig config_;
  TransformedParams model_;
  int steps_;
};

// Draws per step: 2 (variance uniform, stock normal).
class QeSimulator {
public:
  QeSimulator(const SchemeConfig& config, const TransformedParams& transformed);
  PathRecord simulate(RngStream& rng, PathTrace* trace = nullptr) const;

private:
  SchemeConfig config_;
  TransformedParams model_;
  RecursionConstants constants_;
  int steps_;
};

}  // namespace threehalves
