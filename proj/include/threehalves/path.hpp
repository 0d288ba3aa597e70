#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "threehalves/params.hpp"
#include "threehalves/quadrature.hpp"

namespace threehalves {

enum class Scheme { weighted, milstein, qe };

std::string_view to_string(Scheme scheme) noexcept;
// Throws ConfigError for anything other than weighted, milstein or qe.
Scheme parse_scheme(std::string_view name);

enum class MilsteinCorrelation {
  correlated,   // z2 = rho z1 + sqrt(1 - rho^2) z_perp
  independent,  // z2 drawn independently of z1
};

// Quadratic-exponential variance step settings.
struct QeConfig {
  double phi_c = 1.5;     // branch switch, in [1, 2]
  double u_floor = 1e-5;  // lower bound applied to U before inversion
};

// Everything a single path simulation needs besides the model.
struct SchemeConfig {
  double maturity = 1.0;
  double h = 0.02;
  QuadratureRule quadrature{};
  double delta = 1e-5;
  LikelihoodCoefficient likelihood = LikelihoodCoefficient::derived;
  MilsteinCorrelation milstein = MilsteinCorrelation::correlated;
  QeConfig qe{};
};

// Number of outer steps; throws DomainError unless h tiles [0, T].
int step_count(const SchemeConfig& config);

// Terminal state of one simulated path.
struct PathRecord {
  double s = 0.0;      // S at T, or at the last outer grid time before tau
  double u = 0.0;      // U at T ^ tau
  double l = 1.0;      // likelihood at T ^ tau
  double tau = 0.0;    // first grid time with U <= delta; T + h if never hit
  double int_u = 0.0;  // integral of 1/U over [0, T ^ tau]
  bool survived = true;
  bool finite = true;  // false if the path produced NaN/Inf
};

// Optional full trajectory. s, u, l are sampled on the outer grid (steps + 1
// values); fine_u and w1_increments on the fine grid of width h / M.
struct PathTrace {
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> l;
  std::vector<double> fine_u;
  std::vector<double> w1_increments;

  void clear() {
    s.clear();
    u.clear();
    l.clear();
    fine_u.clear();
    w1_increments.clear();
  }
};

}  // namespace threehalves
