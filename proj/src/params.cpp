#include "threehalves/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "threehalves/errors.hpp"

namespace threehalves {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be finite";
    throw DomainError(msg.str());
  }
}

}  // namespace

ModelParams validate(const ModelParams& p) {
  require_finite(p.s0, "s0");
  require_finite(p.v0, "v0");
  require_finite(p.kappa, "kappa");
  require_finite(p.theta, "theta");
  require_finite(p.epsilon, "epsilon");
  require_finite(p.rho, "rho");
  require_finite(p.r, "r");
  if (p.s0 <= 0.0) throw DomainError("s0 must be positive");
  if (p.v0 <= 0.0) throw DomainError("v0 must be positive");
  if (p.epsilon <= 0.0) throw DomainError("epsilon must be positive");
  if (p.rho < -1.0 || p.rho > 1.0) throw DomainError("rho must lie in [-1, 1]");
  if (p.kappa <= -0.5 * p.epsilon * p.epsilon) {
    throw FellerViolation("kappa must exceed -epsilon^2/2");
  }
  if (p.kappa * p.theta <= 0.0) {
    throw DomainError("kappa * theta must be positive");
  }
  return p;
}

int ou_count(double ratio) {
  const double n = std::floor(ratio + 0.5);
  return n < 1.0 ? 1 : static_cast<int>(n);
}

int ou_count(const TransformedParams& transformed) {
  return ou_count(transformed.ratio);
}

TransformedParams transform(const ModelParams& params, double integer_tolerance) {
  const ModelParams p = validate(params);
  TransformedParams t;
  t.kappa_t = p.kappa * p.theta;
  t.theta_t = (p.kappa + p.epsilon * p.epsilon) / t.kappa_t;
  t.eps_t = -p.epsilon;
  t.ratio = 4.0 * t.kappa_t * t.theta_t / (t.eps_t * t.eps_t);
  t.n = ou_count(t.ratio);
  t.theta_n = t.n * t.eps_t * t.eps_t / (4.0 * t.kappa_t);
  t.integer_regime = std::abs(t.ratio - t.n) <= integer_tolerance;
  t.u0 = 1.0 / p.v0;
  t.s0 = p.s0;
  t.r = p.r;
  t.rho = p.rho;
  return t;
}

OuStepConstants ou_step_constants(const TransformedParams& t, double dt) {
  OuStepConstants k;
  k.alpha = std::exp(-0.5 * t.kappa_t * dt);
  k.sigma2 = t.eps_t * t.eps_t / (4.0 * t.kappa_t) * -std::expm1(-t.kappa_t * dt);
  return k;
}

RecursionConstants recursion_constants(const TransformedParams& t, double h,
                                       LikelihoodCoefficient variant) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step h must be positive");
  const double eps2 = t.eps_t * t.eps_t;
  const double kt_tt = t.kappa_t * t.theta_t;
  const double kt_tn = t.kappa_t * t.theta_n;

  RecursionConstants k;
  k.h = h;
  k.rho_over_eps = t.rho / t.eps_t;
  k.a = t.r + k.rho_over_eps * t.kappa_t;
  k.b = k.rho_over_eps * (kt_tt - 0.5 * eps2) + 0.5;
  k.c = t.integer_regime ? 0.0 : -(kt_tn - kt_tt) / eps2;
  switch (variant) {
    case LikelihoodCoefficient::derived:
      k.d = 0.5 * (eps2 - kt_tn - kt_tt);
      break;
    case LikelihoodCoefficient::printed:
      k.d = 0.5 * (kt_tt - 3.0 * kt_tn + eps2);
      break;
  }
  const OuStepConstants ou = ou_step_constants(t, h);
  k.alpha_h = ou.alpha;
  k.sigma2_h = ou.sigma2;
  k.kappa_t = t.kappa_t;
  k.orth = std::sqrt(std::max(0.0, 1.0 - t.rho * t.rho));
  return k;
}

}  // namespace threehalves
