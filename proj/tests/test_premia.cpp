#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"
#include "corrpref/premia.hpp"

using namespace corrpref;

namespace {

// Independent oracle: solve V0(corr(eps)) = V0(iid_scaled(pi)) directly with
// the tree evaluator and a fresh bisection.
double exact_persistence_oracle(const KPModel& m, double c0, double x,
                                double y, double eps) {
  const double target = kp_evaluate(m, build_corr(eps, c0, x, y));
  return num::bisect(
      [&](double pi) {
        return kp_evaluate(m, build_iid_scaled(pi, c0, x, y)) - target;
      },
      0.0, 1.0 - 1e-9, 1e-11);
}

double exact_timing_oracle(const KPModel& m, double c0, double k, double x,
                           double y, double eps) {
  const double target = kp_evaluate(m, build_gradual(eps, c0, k, x, y));
  return num::bisect(
      [&](double pi) {
        return kp_evaluate(m, build_early(pi, c0, k, x, y)) - target;
      },
      0.0, 1.0 - 1e-9, 1e-11);
}

}  // namespace

TEST_CASE("persistence premium agrees with a direct tree-level bisection") {
  KPModel hs{RiskAdjustment::exponential(1.0), Felicity::linear(), 1.0};
  for (double eps : {0.2, 0.5, 0.9}) {
    const auto r = persistence_premium(hs, 1.0, 2.0, 1.0, eps);
    CHECK(r.exact_pi ==
          doctest::Approx(exact_persistence_oracle(hs, 1.0, 2.0, 1.0, eps))
              .epsilon(1e-8));
  }
  KPModel ez{RiskAdjustment::ez_power(-1, 0.5), Felicity::linear(), 0.9};
  const auto r = persistence_premium(ez, 1.0, 3.0, 1.0, 0.7);
  CHECK(r.exact_pi ==
        doctest::Approx(exact_persistence_oracle(ez, 1.0, 3.0, 1.0, 0.7))
            .epsilon(1e-8));
}

TEST_CASE("persistence premium pinned value for the HS test model") {
  KPModel hs{RiskAdjustment::exponential(1.0), Felicity::linear(), 1.0};
  const auto r = persistence_premium_approx(hs, 1.0, 2.0, 1.0, 0.9);
  CHECK(r.exact_pi == doctest::Approx(0.068898).epsilon(1e-4));
  CHECK(r.approx_pi == doctest::Approx(r.exact_pi).epsilon(1e-4));
}

TEST_CASE("identity adjustment carries a zero premium") {
  KPModel id{RiskAdjustment::identity(), Felicity::linear(), 0.9};
  for (double eps : {0.1, 0.6, 1.0}) {
    CHECK(persistence_premium(id, 1.0, 2.0, 1.0, eps).exact_pi ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("premium is increasing in the correlation parameter") {
  KPModel hs{RiskAdjustment::exponential(1.0), Felicity::linear(), 1.0};
  double prev = -1;
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    const double pi = persistence_premium(hs, 1.0, 2.0, 1.0, eps).exact_pi;
    CHECK(pi > prev);
    prev = pi;
  }
}

TEST_CASE("approximation error vanishes to second order at full correlation") {
  KPModel hs{RiskAdjustment::exponential(1.0), Felicity::linear(), 1.0};
  const auto r1 = persistence_premium_approx(hs, 1, 2, 1, 0.9);
  const auto r2 = persistence_premium_approx(hs, 1, 2, 1, 0.99);
  const double slope =
      (std::log(std::fabs(r2.gap)) - std::log(std::fabs(r1.gap))) /
      (std::log(0.01) - std::log(0.1));
  CHECK(slope >= 2.7);
  CHECK(std::fabs(r2.gap) < 1e-6);
}

TEST_CASE("timing premium vanishes at eps = 1 and is positive before") {
  KPModel ez{RiskAdjustment::ez_power(-1, 0.5), Felicity::linear(), 0.9};
  CHECK(timing_premium(ez, 1, 1, 2, 1, 1.0).exact_pi ==
        doctest::Approx(0.0).epsilon(1e-9));
  for (double eps : {0.0, 0.4, 0.8}) {
    const auto r = timing_premium(ez, 1, 1, 2, 1, eps);
    CHECK(r.exact_pi > 0);
    CHECK(r.exact_pi ==
          doctest::Approx(exact_timing_oracle(ez, 1, 1, 2, 1, eps))
              .epsilon(1e-8));
  }
}

TEST_CASE("timing approximation is first-order accurate near eps = 1") {
  KPModel ez{RiskAdjustment::ez_power(-1, 0.5), Felicity::linear(), 0.9};
  const double g1 = std::fabs(timing_premium(ez, 1, 1, 2, 1, 0.9).exact_pi -
                              timing_premium_approx(ez, 1, 1, 2, 1, 0.9));
  const double g2 = std::fabs(timing_premium(ez, 1, 1, 2, 1, 0.99).exact_pi -
                              timing_premium_approx(ez, 1, 1, 2, 1, 0.99));
  const double slope =
      (std::log(g2) - std::log(g1)) / (std::log(0.01) - std::log(0.1));
  CHECK(slope >= 1.7);
}

TEST_CASE("Rohde-Yu measure reference values") {
  KPModel ez{RiskAdjustment::ez_power(-0.61 / 3, 1.0 / 3),
             Felicity::power(1.0 / 3), 0.998};
  CHECK(dpos_measure(ez, 10, 5) == doctest::Approx(0.008012).epsilon(1e-4));
  KPModel crra28{RiskAdjustment::hara(-27, 0),
                 Felicity::scaled_power(3, 1.0 / 3), 0.998};
  CHECK(dpos_measure(crra28, 10, 5) ==
        doctest::Approx(0.034054).epsilon(1e-4));
  KPModel hara{RiskAdjustment::hara(-2, 0.72),
               Felicity::scaled_power(3, 1.0 / 3), 0.998};
  CHECK(dpos_measure(hara, 10, 5) == doctest::Approx(0.015794).epsilon(1e-4));
  // correlation neutrality: identity phi sees no gap
  KPModel id{RiskAdjustment::identity(), Felicity::power(1.0 / 3), 0.998};
  CHECK(dpos_measure(id, 10, 5) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("premium parameter validation") {
  KPModel hs{RiskAdjustment::exponential(1.0), Felicity::linear(), 1.0};
  CHECK_THROWS_AS(persistence_premium(hs, 1, 1, 2, 0.5), ParamOutOfRange);
  CHECK_THROWS_AS(persistence_premium(hs, 1, 2, 1, 1.5), ParamOutOfRange);
}
