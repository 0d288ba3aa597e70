#include "threehalves/benchmark_schemes.hpp"

#include <algorithm>
#include <cmath>

#include "threehalves/errors.hpp"
#include "threehalves/explicit_scheme.hpp"

namespace threehalves {

double milstein_u_step(double u_t, double h, const TransformedParams& t,
                       double z1) noexcept {
  const double ub = std::max(u_t, 0.0);
  return u_t + t.kappa_t * (t.theta_t - ub) * h + t.eps_t * std::sqrt(ub * h) * z1 +
         0.25 * t.eps_t * t.eps_t * (z1 * z1 - 1.0) * h;
}

double milstein_s_step(double s_t, double u_bar, double h, double r, double rho,
                       double z1, double z_perp, MilsteinCorrelation mode) {
  if (!(u_bar > 0.0)) throw NonPositiveU("Milstein variance clamp reached zero");
  const double z2 = mode == MilsteinCorrelation::correlated
                        ? rho * z1 + std::sqrt(1.0 - rho * rho) * z_perp
                        : z_perp;
  return s_t * std::exp((r - 0.5 / u_bar) * h + std::sqrt(h / u_bar) * z2);
}

QeMoments qe_moments(double u_t, double h, const TransformedParams& t) noexcept {
  const double e = std::exp(-t.kappa_t * h);
  const double one_minus = -std::expm1(-t.kappa_t * h);
  const double eps2 = t.eps_t * t.eps_t;
  QeMoments mom;
  mom.m = t.theta_t + (u_t - t.theta_t) * e;
  mom.s2 = u_t * eps2 * e / t.kappa_t * one_minus +
           t.theta_t * eps2 / (2.0 * t.kappa_t) * one_minus * one_minus;
  mom.phi = mom.s2 / (mom.m * mom.m);
  return mom;
}

double qe_quadratic(double m, double s2, double z) noexcept {
  const double inv = 2.0 * m * m / s2;  // 2 / phi
  const double b2 = inv - 1.0 + std::sqrt(inv) * std::sqrt(inv - 1.0);
  const double a = m / (1.0 + b2);
  const double b = std::sqrt(b2);
  return a * (b + z) * (b + z);
}

double qe_exponential(double m, double s2, double x) noexcept {
  const double phi = s2 / (m * m);
  const double p = (phi - 1.0) / (phi + 1.0);
  if (x <= p) return 0.0;
  const double beta = (1.0 - p) / m;
  return std::log((1.0 - p) / (1.0 - x)) / beta;
}

double qe_u_step(double u_t, double h, const TransformedParams& t, const QeConfig& qe,
                 double uniform) {
  if (!(u_t > 0.0)) throw DomainError("QE step needs a positive inverse variance");
  const QeMoments mom = qe_moments(u_t, h, t);
  const double next = mom.phi < qe.phi_c
                          ? qe_quadratic(mom.m, mom.s2, inverse_normal_cdf(uniform))
                          : qe_exponential(mom.m, mom.s2, uniform);
  return std::max(next, qe.u_floor);
}

double qe_s_step(double s_t, double u_t, double u_next, const RecursionConstants& k,
                 double z) {
  if (!(u_t > 0.0) || !(u_next > 0.0)) {
    throw NonPositiveU("inverse variance must be positive");
  }
  const double integral = 0.5 * k.h * (1.0 / u_t + 1.0 / u_next);
  return s_step(s_t, u_t, u_next, integral, z, k);
}

MilsteinSimulator::MilsteinSimulator(const SchemeConfig& config,
                                     const TransformedParams& transformed)
    : config_(config), model_(transformed), steps_(step_count(config)) {}

PathRecord MilsteinSimulator::simulate(RngStream& rng, PathTrace* trace) const {
  const double h = config_.h;
  PathRecord rec;
  rec.s = model_.s0;
  rec.u = model_.u0;
  rec.tau = config_.maturity + h;
  if (trace) {
    trace->clear();
    trace->s.push_back(rec.s);
    trace->u.push_back(rec.u);
    trace->l.push_back(1.0);
  }
  for (int k = 0; k < steps_; ++k) {
    const double z1 = rng.normal();
    const double z_perp = rng.normal();
    const double ub = std::max(rec.u, 0.0);
    if (!(ub > 0.0)) {
      rec.finite = false;
      return rec;
    }
    rec.s = milstein_s_step(rec.s, ub, h, model_.r, model_.rho, z1, z_perp,
                            config_.milstein);
    rec.u = milstein_u_step(rec.u, h, model_, z1);
    rec.int_u += h / ub;
    if (trace) {
      trace->s.push_back(rec.s);
      trace->u.push_back(rec.u);
      trace->l.push_back(1.0);
    }
  }
  rec.finite = std::isfinite(rec.s) && std::isfinite(rec.u);
  return rec;
}

QeSimulator::QeSimulator(const SchemeConfig& config, const TransformedParams& transformed)
    : config_(config),
      model_(transformed),
      constants_(recursion_constants(transformed, config.h)),
      steps_(step_count(config)) {
  if (!(config.qe.phi_c >= 1.0 && config.qe.phi_c <= 2.0)) {
    throw DomainError("QE switching constant phi_c must lie in [1, 2]");
  }
  if (!(config.qe.u_floor > 0.0)) throw DomainError("QE floor must be positive");
}

PathRecord QeSimulator::simulate(RngStream& rng, PathTrace* trace) const {
  const double h = config_.h;
  PathRecord rec;
  rec.s = model_.s0;
  rec.u = model_.u0;
  rec.tau = config_.maturity + h;
  if (trace) {
    trace->clear();
    trace->s.push_back(rec.s);
    trace->u.push_back(rec.u);
    trace->l.push_back(1.0);
  }
  for (int k = 0; k < steps_; ++k) {
    const double x = rng.uniform();
    const double z = rng.normal();
    const double next = qe_u_step(rec.u, h, model_, config_.qe, x);
    rec.s = qe_s_step(rec.s, rec.u, next, constants_, z);
    rec.int_u += 0.5 * h * (1.0 / rec.u + 1.0 / next);
    rec.u = next;
    if (trace) {
      trace->s.push_back(rec.s);
      trace->u.push_back(rec.u);
      trace->l.push_back(1.0);
    }
  }
  rec.finite = std::isfinite(rec.s) && std::isfinite(rec.u);
  return rec;
}

}  // namespace threehalves
