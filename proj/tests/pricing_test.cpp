#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "threehalves/errors.hpp"
#include "threehalves/pricing.hpp"

using namespace threehalves;

namespace {

// Payoff equal to the terminal stock value, so tests control it directly.
const PayoffSpec kIdentity =
    PayoffSpec::path([](const PathRecord& p, const PathTrace*) { return p.s; });

PathRecord rec(double s, double l = 1.0, bool survived = true) {
  PathRecord p;
  p.s = s;
  p.l = l;
  p.survived = survived;
  return p;
}

}  // namespace

TEST_CASE("call payoff") {
  CHECK(payoff_european_call(110.0, 100.0, 0.0, 1.0) == 10.0);
  CHECK(payoff_european_call(90.0, 100.0, 0.0, 1.0) == 0.0);
  CHECK(payoff_european_call(110.0, 100.0, 0.05, 1.0) ==
        doctest::Approx(10.0 * std::exp(-0.05)).epsilon(1e-15));
}

TEST_CASE("estimator examples") {
  const std::vector<PathRecord> equal{rec(1), rec(2), rec(3)};
  CHECK(estimate_price(equal, kIdentity, 0.0, 1.0).price == doctest::Approx(2.0));

  const std::vector<PathRecord> weighted{rec(2, 1), rec(4, 3)};
  CHECK(estimate_price(weighted, kIdentity, 0.0, 1.0).price == doctest::Approx(3.5));

  const std::vector<PathRecord> stopped{rec(2, 1), rec(4, 3), rec(100, 0.5, false)};
  const PriceEstimate e = estimate_price(stopped, kIdentity, 0.0, 1.0);
  CHECK(e.price == doctest::Approx(14.0 / 4.5));
  CHECK(e.n_stopped == 1);
  CHECK(e.n_paths == 3);
  CHECK(e.weight_sum == 4.5);

  const std::vector<PathRecord> calls{rec(110), rec(95)};
  CHECK(estimate_price(calls, PayoffSpec::european_call(100.0), 0.0, 1.0).price ==
        doctest::Approx(5.0));
}

TEST_CASE("estimator errors") {
  CHECK_THROWS_AS(estimate_price({}, kIdentity, 0.0, 1.0), EmptyPathSet);
  const std::vector<PathRecord> zero{rec(1, 0.0)};
  CHECK_THROWS_AS(estimate_price(zero, kIdentity, 0.0, 1.0), DomainError);
  const std::vector<PathRecord> ok{rec(1)};
  CHECK_THROWS_AS(estimate_price(ok, PayoffSpec::european_call(0.0), 0.0, 1.0), DomainError);
  const std::vector<PathTrace> traces(2);
  CHECK_THROWS_AS(estimate_price(ok, kIdentity, 0.0, 1.0, Normalization::self_normalized,
                                 traces),
                  DomainError);
}

TEST_CASE("unit weights reproduce the plain mean and ESS = N") {
  std::mt19937_64 gen(1);
  std::lognormal_distribution<double> ln(4.6, 0.3);
  std::vector<PathRecord> paths;
  double sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    paths.push_back(rec(ln(gen)));
    sum += std::max(paths.back().s - 100.0, 0.0);
  }
  const PriceEstimate e = estimate_price(paths, PayoffSpec::european_call(100.0), 0.0, 1.0);
  CHECK(e.price == sum / 1000.0);
  CHECK(e.ess == doctest::Approx(1000.0));
  const PriceEstimate u = estimate_price(paths, PayoffSpec::european_call(100.0), 0.0, 1.0,
                                         Normalization::unnormalized);
  CHECK(u.price == doctest::Approx(e.price).epsilon(1e-14));
}

TEST_CASE("scale equivariance and the delta-method error") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> unit(0.1, 2.0);
  std::vector<PathRecord> paths, payoff_scaled, weight_scaled;
  for (int i = 0; i < 500; ++i) {
    const double s = 10 * unit(gen), l = unit(gen);
    const bool alive = unit(gen) > 0.3;
    paths.push_back(rec(s, l, alive));
    payoff_scaled.push_back(rec(7.5 * s, l, alive));
    weight_scaled.push_back(rec(s, 3.0 * l, alive));
  }
  const PriceEstimate base = estimate_price(paths, kIdentity, 0.0, 1.0);
  CHECK(estimate_price(payoff_scaled, kIdentity, 0.0, 1.0).price ==
        doctest::Approx(7.5 * base.price).epsilon(1e-14));
  CHECK(estimate_price(weight_scaled, kIdentity, 0.0, 1.0).price ==
        doctest::Approx(base.price).epsilon(1e-14));

  double w = 0, num = 0, w2 = 0;
  for (const auto& p : paths) {
    w += p.l;
    w2 += p.l * p.l;
  }
  for (const auto& p : paths) {
    const double x = p.survived ? p.s : 0.0;
    num += p.l * p.l * (x - base.price) * (x - base.price);
  }
  CHECK(base.std_error == doctest::Approx(std::sqrt(num) / w).epsilon(1e-12));
  CHECK(base.ess == doctest::Approx(w * w / w2).epsilon(1e-12));

  const PriceEstimate raw =
      estimate_price(weight_scaled, kIdentity, 0.0, 1.0, Normalization::unnormalized);
  double expect = 0.0;
  for (const auto& p : weight_scaled) expect += p.survived ? p.l * p.s : 0.0;
  CHECK(raw.price == doctest::Approx(expect / 500.0).epsilon(1e-13));
}

TEST_CASE("path functional receives the trace") {
  std::vector<PathRecord> paths{rec(1), rec(2)};
  std::vector<PathTrace> traces(2);
  traces[0].s = {1.0, 5.0, 1.0};
  traces[1].s = {2.0, 3.0, 2.0};
  const PayoffSpec max_s = PayoffSpec::path([](const PathRecord&, const PathTrace* t) {
    return *std::max_element(t->s.begin(), t->s.end());
  });
  CHECK(estimate_price(paths, max_s, 0.0, 1.0, Normalization::self_normalized, traces).price ==
        doctest::Approx(4.0));
}

TEST_CASE("error statistics") {
  const std::vector<double> est{9.0, 11.0};
  const ErrorStats s = error_stats(est, 10.0);
  CHECK(s.mse == doctest::Approx(1.0));
  CHECK(s.rel_mse_pct() == doctest::Approx(10.0));
  CHECK(s.n_repetitions == 2);
  const std::vector<double> same{10.0, 10.0};
  CHECK(error_stats(same, 10.0).mse == 0.0);
  CHECK_THROWS_AS(error_stats(est, 0.0), DomainError);
  const std::vector<double> one{10.0};
  CHECK_THROWS_AS(error_stats(one, 10.0), DomainError);

  std::vector<PriceEstimate> pe(2);
  pe[0].price = 9.0;
  pe[1].price = 11.0;
  CHECK(error_stats(pe, 10.0) == s);
}
