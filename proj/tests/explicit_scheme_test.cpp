#include <doctest.h>

#include <cmath>
#include <vector>

#include "threehalves/errors.hpp"
#include "threehalves/explicit_scheme.hpp"
#include "threehalves/fixtures.hpp"
#include "threehalves/quadrature.hpp"

using namespace threehalves;

namespace {

TransformedParams tp(const char* name) { return transform(parameter_set(name).params); }

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= static_cast<double>(x.size() - 1);
  return m;
}

}  // namespace

TEST_CASE("OU primitives") {
  const TransformedParams t = tp("PS2");
  const OuState y0 = OuState::initial(t);
  REQUIRE(y0.y.size() == 5);
  CHECK(u_from_ou(y0.y) == doctest::Approx(1.0 / 0.06).epsilon(1e-14));

  const std::vector<double> zeros(5, 0.0);
  CHECK(u_from_ou(zeros) == 0.0);

  // h = 0 leaves the state unchanged
  const OuStepConstants still = ou_step_constants(t, 0.0);
  CHECK(ou_step(y0, still.alpha, still.sigma2, zeros).y == y0.y);

  // zero state with a unit shock on the first component
  const OuStepConstants k = ou_step_constants(t, 0.02);
  std::vector<double> z(5, 0.0);
  z[0] = 1.0;
  const OuState out = ou_step(OuState{zeros}, k.alpha, k.sigma2, z);
  CHECK(out.y[0] == doctest::Approx(std::sqrt(0.34871684221649975)).epsilon(1e-13));
  for (int i = 1; i < 5; ++i) CHECK(out.y[static_cast<std::size_t>(i)] == 0.0);
  CHECK(k.alpha == doctest::Approx(0.95142806194157691).epsilon(1e-14));
}

TEST_CASE("s_step examples") {
  const TransformedParams t = tp("PS2");
  RecursionConstants k = recursion_constants(t, 0.02);

  SUBCASE("reference value") {
    const double u = 1.0 / 0.06;
    CHECK(s_step(100.0, u, u, 0.0012, 0.0, k) ==
          doctest::Approx(100.26661808524375).epsilon(1e-13));
  }
  SUBCASE("zero correlation, zero shock") {
    ModelParams p = parameter_set("PS2").params;
    p.rho = 0.0;
    p.r = 0.05;
    const RecursionConstants k0 = recursion_constants(transform(p), 0.02);
    CHECK(s_step(100.0, 3.0, 5.0, 0.01, 0.0, k0) ==
          doctest::Approx(100.0 * std::exp(0.05 * 0.02 - 0.005)).epsilon(1e-14));
    CHECK(s_step(100.0, 3.0, 5.0, 0.0, 1.7, k0) ==
          doctest::Approx(100.0 * std::exp(0.05 * 0.02)).epsilon(1e-14));
  }
  SUBCASE("non-positive U") {
    CHECK_THROWS_AS(s_step(100.0, 0.0, 1.0, 0.01, 0.0, k), NonPositiveU);
    CHECK_THROWS_AS(s_step(100.0, 1.0, -1.0, 0.01, 0.0, k), NonPositiveU);
  }
}

TEST_CASE("l_step examples") {
  const RecursionConstants k = recursion_constants(tp("PS2"), 0.02);
  const double u = 1.0 / 0.06;
  CHECK(l_step(1.0, u, u, 0.02 / u, 0.02, k) ==
        doctest::Approx(1.0019100444374762).epsilon(1e-13));
  CHECK_THROWS_AS(l_step(1.0, 0.0, u, 0.01, 0.02, k), NonPositiveU);

  const RecursionConstants k3 = recursion_constants(tp("PS3"), 0.02);
  CHECK(l_step(0.73, 2.0, 9.0, 0.4, 0.02, k3) == 0.73);
}

TEST_CASE("l_ref special cases") {
  const TransformedParams t3 = tp("PS3");
  const std::vector<double> u{2.0, 3.0, 4.0};
  const std::vector<double> dw{0.1, -0.2};
  CHECK(l_ref(u, dw, 0.01, t3) == 1.0);

  const TransformedParams t2 = tp("PS2");
  const std::vector<double> flat(11, 5.0);
  const std::vector<double> none(10, 0.0);
  const double drift = t2.kappa_t * (t2.theta_n - t2.theta_t) / t2.eps_t;
  CHECK(l_ref(flat, none, 0.01, t2) ==
        doctest::Approx(std::exp(-0.5 * drift * drift * 0.1 / 5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(l_ref(flat, dw, 0.01, t2), DomainError);
}

TEST_CASE("one outer step equals the hand-unrolled recursion") {
  const TransformedParams t = tp("PS2");
  SchemeConfig cfg;
  cfg.maturity = 0.02;
  cfg.h = 0.02;
  cfg.quadrature = QuadratureRule{QuadratureKind::simpson13, 2};

  RngStream a(77, 4);
  const PathRecord rec = simulate_path(cfg, t, a);

  RngStream b(77, 4);
  const RecursionConstants k = recursion_constants(t, cfg.h);
  const OuStepConstants fine = ou_step_constants(t, cfg.h / 2);
  OuState y = OuState::initial(t);
  std::vector<double> u{u_from_ou(y.y)};
  std::vector<double> z(5);
  for (int j = 0; j < 2; ++j) {
    b.fill_normal(z);
    y = ou_step(y, fine.alpha, fine.sigma2, z);
    u.push_back(u_from_ou(y.y));
  }
  const double integral = integrate_inverse(u, cfg.h, cfg.quadrature);
  const double s = s_step(100.0, u[0], u[2], integral, b.normal(), k);
  const double l = l_step(1.0, u[0], u[2], integral, cfg.h, k);

  CHECK(rec.s == s);
  CHECK(rec.l == l);
  CHECK(rec.u == u[2]);
  CHECK(rec.int_u == integral);
  CHECK(rec.survived);
  CHECK(rec.tau == doctest::Approx(0.04));
  CHECK(a.draws() == b.draws());
  CHECK(a.draws() == 2 * 5 + 1);
}

TEST_CASE("integer regime keeps the likelihood at one") {
  for (const char* name : {"PS3", "PS5"}) {
    const TransformedParams t = tp(name);
    SchemeConfig cfg;
    cfg.maturity = 0.2;
    WeightedSimulator sim(cfg, t);
    for (std::uint64_t j = 0; j < 50; ++j) {
      RngStream rng(3, j);
      CHECK(sim.simulate(rng).l == 1.0);
    }
  }
}

TEST_CASE("OU moments at t = 0.5 (PS3)") {
  const TransformedParams t = tp("PS3");
  const OuStepConstants k = ou_step_constants(t, 0.02);
  const int paths = 100000;
  std::vector<double> first(paths);
  std::vector<double> y(5), z(5);
  for (int j = 0; j < paths; ++j) {
    RngStream rng(11, static_cast<std::uint64_t>(j));
    std::fill(y.begin(), y.end(), std::sqrt(t.u0 / 5));
    for (int step = 0; step < 25; ++step) {
      rng.fill_normal(z);
      ou_step(y, k.alpha, k.sigma2, z);
    }
    first[static_cast<std::size_t>(j)] = y[0];
  }
  const Moments m = moments(first);
  const double mean = std::exp(-t.kappa_t * 0.25) * std::sqrt(t.u0 / 5);
  const double var = t.eps_t * t.eps_t / (4 * t.kappa_t) * (1 - std::exp(-t.kappa_t * 0.5));
  CHECK(std::abs(m.mean - mean) < 3.0 * std::sqrt(var / paths));
  CHECK(std::abs(m.var - var) < 3.0 * var * std::sqrt(2.0 / paths));
}

TEST_CASE("mean of U(t) follows the CIR mean with level theta_n") {
  const TransformedParams t = tp("PS3");
  SchemeConfig cfg;
  cfg.maturity = 0.25;
  cfg.h = 0.025;
  WeightedSimulator sim(cfg, t);
  const int paths = 40000;
  std::vector<double> u(paths);
  for (int j = 0; j < paths; ++j) {
    RngStream rng(21, static_cast<std::uint64_t>(j));
    u[static_cast<std::size_t>(j)] = sim.simulate(rng).u;
  }
  const Moments m = moments(u);
  const double e = std::exp(-t.kappa_t * 0.25);
  const double want = t.u0 * e + t.theta_n * (1 - e);
  CHECK(std::abs(m.mean - want) < 3.0 * std::sqrt(m.var / paths));
}

TEST_CASE("stopping freezes the path at the first fine point below delta") {
  const TransformedParams t = tp("PS2");
  SchemeConfig cfg;
  cfg.maturity = 1.0;
  cfg.delta = 0.9;  // U0 = 16.7, so most paths reach this level within T
  cfg.quadrature = QuadratureRule{QuadratureKind::simpson13, 4};
  WeightedSimulator sim(cfg, t);
  int stopped = 0;
  PathTrace trace;
  for (std::uint64_t j = 0; j < 200; ++j) {
    RngStream rng(8, j);
    const PathRecord rec = sim.simulate(rng, &trace);
    const double dx = cfg.h / 4;
    if (rec.survived) {
      CHECK(rec.tau == doctest::Approx(cfg.maturity + cfg.h));
      for (double v : trace.fine_u) CHECK(v > cfg.delta);
      continue;
    }
    ++stopped;
    CHECK(rec.tau <= cfg.maturity + 1e-12);
    const double k = rec.tau / dx;
    CHECK(std::abs(k - std::round(k)) < 1e-9);
    CHECK(rec.u <= cfg.delta);
    CHECK(trace.fine_u.back() == rec.u);
    for (std::size_t i = 0; i + 1 < trace.fine_u.size(); ++i) CHECK(trace.fine_u[i] > cfg.delta);
    CHECK(trace.fine_u.size() == static_cast<std::size_t>(std::llround(k)) + 1);
    CHECK(std::isfinite(rec.l));
    CHECK(rec.l > 0.0);
  }
  CHECK(stopped > 0);
}

TEST_CASE("recursive likelihood tracks the Girsanov exponent on a fine grid") {
  const TransformedParams t = tp("PS2");
  SchemeConfig cfg;
  cfg.maturity = 0.2;
  cfg.h = 0.002;
  cfg.quadrature = QuadratureRule{QuadratureKind::simpson13, 8};
  WeightedSimulator sim(cfg, t);
  PathTrace trace;
  for (std::uint64_t j = 0; j < 10; ++j) {
    RngStream rng(5, j);
    const PathRecord rec = sim.simulate(rng, &trace);
    REQUIRE(rec.survived);
    const double ref = l_ref(trace.fine_u, trace.w1_increments, cfg.h / 8, t);
    CHECK(std::abs(std::log(rec.l) - std::log(ref)) < 0.01);
  }
}

TEST_CASE("trace layout") {
  const TransformedParams t = tp("PS2");
  SchemeConfig cfg;
  cfg.maturity = 0.1;
  cfg.quadrature = QuadratureRule{QuadratureKind::trapezoid, 3};
  PathTrace trace;
  RngStream rng(1, 1);
  const PathRecord rec = simulate_path(cfg, t, rng, &trace);
  CHECK(trace.s.size() == 6);
  CHECK(trace.fine_u.size() == 16);
  CHECK(trace.w1_increments.size() == 15);
  CHECK(trace.s.back() == rec.s);
  CHECK(trace.l.back() == rec.l);
  CHECK(rng.draws() == 5 * (3 * 5 + 1));
}
