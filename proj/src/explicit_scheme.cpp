#include "threehalves/explicit_scheme.hpp"

#include <cmath>

#include "threehalves/errors.hpp"

namespace threehalves {

namespace {

void require_positive_u(double u_t, double u_next) {
  if (!(u_t > 0.0) || !(u_next > 0.0)) {
    throw NonPositiveU("inverse variance must be positive");
  }
}

// Integral of 1/U over the first `intervals` fine subintervals of a step.
double partial_integral(std::span<const double> u, double dx, int intervals,
                        QuadratureKind kind) noexcept {
  const auto samples = u.first(static_cast<std::size_t>(intervals) + 1);
  const double width = dx * intervals;
  if (kind == QuadratureKind::simpson13 && intervals % 2 == 0) {
    return integrate_inverse_unchecked(samples, width, QuadratureKind::simpson13);
  }
  return integrate_inverse_unchecked(samples, width, QuadratureKind::trapezoid);
}

}  // namespace

OuState OuState::initial(const TransformedParams& t) {
  return OuState{std::vector<double>(static_cast<std::size_t>(t.n),
                                     std::sqrt(t.u0 / t.n))};
}

void ou_step(std::span<double> y, double alpha, double sigma2,
             std::span<const double> normals) noexcept {
  const double sigma = std::sqrt(sigma2);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha * y[i] + sigma * normals[i];
}

OuState ou_step(OuState state, double alpha, double sigma2,
                std::span<const double> normals) {
  if (normals.size() < state.y.size()) {
    throw DomainError("need one normal draw per OU component");
  }
  ou_step(state.y, alpha, sigma2, normals);
  return state;
}

double u_from_ou(std::span<const double> y) noexcept {
  double u = 0.0;
  for (double v : y) u += v * v;
  return u;
}

double s_step(double s_t, double u_t, double u_next, double int_u_step, double z,
              const RecursionConstants& k) {
  require_positive_u(u_t, u_next);
  const double exponent = k.rho_over_eps * std::log(u_next / u_t) + k.a * k.h -
                          k.b * int_u_step + k.orth * std::sqrt(int_u_step) * z;
  return s_t * std::exp(exponent);
}

double l_step(double l_t, double u_t, double u_next, double int_u_step, double dt_eff,
              const RecursionConstants& k) {
  require_positive_u(u_t, u_next);
  if (k.c == 0.0) return l_t;
  return l_t * std::exp(k.c * (std::log(u_next / u_t) + k.kappa_t * dt_eff +
                               k.d * int_u_step));
}

double w1_increment(std::span<const double> y_before, std::span<const double> y_after,
                    double dt, const OuStepConstants& ou, double eps_t) noexcept {
  const double scale = std::copysign(std::sqrt(dt / ou.sigma2), eps_t);
  double num = 0.0;
  for (std::size_t i = 0; i < y_before.size(); ++i) {
    const double dz = scale * (y_after[i] - ou.alpha * y_before[i]);
    num += y_before[i] * dz;
  }
  return num / std::sqrt(u_from_ou(y_before));
}

double l_ref(std::span<const double> u_path, std::span<const double> w1_increments,
             double dt, const TransformedParams& t) {
  if (u_path.size() != w1_increments.size() + 1) {
    throw DomainError("u_path must have one more sample than w1_increments");
  }
  const double shift = t.integer_regime ? 0.0 : t.theta_n - t.theta_t;
  double stochastic = 0.0;
  double time = 0.0;
  for (std::size_t i = 0; i < w1_increments.size(); ++i) {
    const double u = u_path[i];
    if (!(u > 0.0)) throw NonPositiveU("inverse variance must be positive");
    stochastic += w1_increments[i] / std::sqrt(u);
    time += dt / u;
  }
  const double drift = t.kappa_t * shift / t.eps_t;
  return std::exp(-drift * stochastic - 0.5 * drift * drift * time);
}

WeightedSimulator::WeightedSimulator(const SchemeConfig& config,
                                     const TransformedParams& transformed)
    : config_(config),
      model_(transformed),
      outer_(recursion_constants(transformed, config.h, config.likelihood)),
      steps_(step_count(config)) {
  check_rule(config.quadrature);
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1)");
  }
  fine_ = ou_step_constants(transformed, config.h / config.quadrature.subintervals);
  const auto n = static_cast<std::size_t>(transformed.n);
  y_.resize(n);
  y_prev_.resize(n);
  normals_.resize(n);
  u_fine_.resize(static_cast<std::size_t>(config.quadrature.subintervals) + 1);
}

PathRecord WeightedSimulator::simulate(RngStream& rng, PathTrace* trace) {
  const int m = config_.quadrature.subintervals;
  const double h = config_.h;
  const double dx = h / m;
  const double delta = config_.delta;

  y_.assign(y_.size(), std::sqrt(model_.u0 / model_.n));
  PathRecord rec;
  rec.s = model_.s0;
  rec.l = 1.0;
  rec.tau = config_.maturity + h;
  u_fine_[0] = u_from_ou(y_);

  if (trace) {
    trace->clear();
    trace->s.push_back(rec.s);
    trace->u.push_back(u_fine_[0]);
    trace->l.push_back(rec.l);
    trace->fine_u.push_back(u_fine_[0]);
  }

  for (int k = 0; k < steps_; ++k) {
    const double t = k * h;
    int stop = 0;
    for (int j = 1; j <= m; ++j) {
      if (trace) y_prev_ = y_;
      rng.fill_normal(normals_);
      ou_step(y_, fine_.alpha, fine_.sigma2, normals_);
      u_fine_[j] = u_from_ou(y_);
      if (trace) {
        trace->fine_u.push_back(u_fine_[j]);
        trace->w1_increments.push_back(
            w1_increment(y_prev_, y_, dx, fine_, model_.eps_t));
      }
      if (u_fine_[j] <= delta) {
        stop = j;
        break;
      }
    }

    if (stop > 0) {
      rec.tau = t + stop * dx;
      rec.survived = false;
      const double part = partial_integral(u_fine_, dx, stop, config_.quadrature.kind);
      rec.l = l_step(rec.l, u_fine_[0], u_fine_[stop], part, rec.tau - t, outer_);
      rec.int_u += part;
      rec.u = u_fine_[stop];
      break;
    }

    const double integral =
        integrate_inverse_unchecked(u_fine_, h, config_.quadrature.kind);
    const double z = rng.normal();
    rec.s = s_step(rec.s, u_fine_[0], u_fine_[m], integral, z, outer_);
    rec.l = l_step(rec.l, u_fine_[0], u_fine_[m], integral, h, outer_);
    rec.int_u += integral;
    u_fine_[0] = u_fine_[m];
    if (trace) {
      trace->s.push_back(rec.s);
      trace->u.push_back(u_fine_[0]);
      trace->l.push_back(rec.l);
    }
  }
  if (rec.survived) rec.u = u_fine_[0];
  rec.finite = std::isfinite(rec.s) && std::isfinite(rec.l) && std::isfinite(rec.u);
  return rec;
}

PathRecord simulate_path(const SchemeConfig& config, const TransformedParams& transformed,
                         RngStream& rng, PathTrace* trace) {
  WeightedSimulator sim(config, transformed);
  return sim.simulate(rng, trace);
}

}  // namespace threehalves
