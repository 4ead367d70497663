#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrpref/errors.hpp"
#include "corrpref/horizon.hpp"

using namespace corrpref;

TEST_CASE("deterministic streams match the constant-stream closed form") {
  const double rho = 0.5, beta = 0.9, c = 2.0, c0 = 1.0;
  const auto phi = RiskAdjustment::ez_power(-1, 1.0);
  StationaryLottery sl;
  sl.dist = {{c, 1.0}};
  sl.c0 = c0;
  const double s = c / std::pow(1 - beta, 1 / rho);  // value of (c, c, ...)
  const double want =
      std::pow(std::pow(c0, rho) + beta * std::pow(s, rho), 1 / rho);
  sl.kind = StationaryLottery::Kind::iid;
  const double v_iid = value_iterate(phi, rho, beta, sl);
  sl.kind = StationaryLottery::Kind::perfectly_correlated;
  const double v_corr = value_iterate(phi, rho, beta, sl);
  CHECK(v_iid == doctest::Approx(want).epsilon(1e-8));
  // degenerate distribution: correlation is irrelevant
  CHECK(std::fabs(v_iid - v_corr) <= 1e-8);
}

TEST_CASE("phi equal to the rho-power collapses to expected utility") {
  // alpha = rho^2 makes phi(x) proportional to x^rho, so the certainty
  // equivalent is the rho-power mean and the expected-utility start is
  // already the fixed point.
  const double rho = 0.5, beta = 0.9;
  const auto phi = RiskAdjustment::ez_power(rho * rho, rho);
  StationaryLottery sl;
  sl.dist = {{1.0, 0.5}, {2.0, 0.5}};
  sl.c0 = 1.0;
  sl.kind = StationaryLottery::Kind::iid;
  const double v = value_iterate(phi, rho, beta, sl);
  // EU fixed point: W(c)^rho = c^rho + beta E W^rho -> E W^rho = E c^rho/(1-beta)
  const double ecr = 0.5 * std::pow(1.0, rho) + 0.5 * std::pow(2.0, rho);
  const double ew = ecr / (1 - beta);
  const double want = std::pow(std::pow(1.0, rho) + beta * ew, 1 / rho);
  CHECK(v == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("benchmark iid versus perfectly correlated comparison") {
  const auto r = compare_iid_corr(RiskAdjustment::ez_power(-1, 1.0), 0.5, 0.9,
                                  {{1.0, 0.5}, {2.0, 0.5}}, 1.0);
  CHECK(r.v_iid == doctest::Approx(139.61328226).epsilon(1e-7));
  CHECK(r.v_corr == doctest::Approx(129.78460969).epsilon(1e-7));
  CHECK(r.iid_weakly_preferred);
}

TEST_CASE("IRRA adjustments weakly prefer the iid lottery") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double rho = 0.2 + 0.7 * unit(rng);
    // keep the consumption-unit curvature alpha/rho below rho so the
    // adjustment is at least as risk averse as the rho-power mean and the
    // expected-utility start is a valid upper bound
    const double alpha = rho * (rho - (0.2 + 2.0 * unit(rng)));
    const double beta = 0.3 + 0.6 * unit(rng);
    Distribution l;
    double sum = 0;
    const int k = 2 + static_cast<int>(unit(rng) * 1.999);
    for (int j = 0; j < k; ++j) {
      l.emplace_back(0.5 + 3 * unit(rng), 0.1 + unit(rng));
      sum += l.back().second;
    }
    for (auto& [c, p] : l) p /= sum;
    const auto r = compare_iid_corr(RiskAdjustment::ez_power(alpha, rho), rho,
                                    beta, l, 1.0);
    CHECK(r.iid_weakly_preferred);
    CHECK(r.v_iid >= r.v_corr - 1e-9);
  }
}

TEST_CASE("parameter validation") {
  const auto phi = RiskAdjustment::ez_power(-1, 1.0);
  StationaryLottery sl;
  sl.dist = {{1.0, 1.0}};
  CHECK_THROWS_AS(value_iterate(phi, 1.5, 0.9, sl), ParamOutOfRange);
  CHECK_THROWS_AS(value_iterate(phi, 0.5, 1.0, sl), ParamOutOfRange);
  sl.dist = {{1.0, 0.7}};
  CHECK_THROWS_AS(value_iterate(phi, 0.5, 0.9, sl), NonStochastic);
  sl.dist = {{-1.0, 1.0}};
  CHECK_THROWS_AS(value_iterate(phi, 0.5, 0.9, sl), ParamOutOfRange);
}
