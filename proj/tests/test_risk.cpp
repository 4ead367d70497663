#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"
#include "corrpref/risk.hpp"

using namespace corrpref;

namespace {

TemporalLottery leaf(double c) {
  TemporalLottery l;
  l.consumption = c;
  return l;
}

TemporalLottery node(double c,
                     std::vector<std::pair<double, TemporalLottery>> br) {
  TemporalLottery n;
  n.consumption = c;
  n.branches = std::move(br);
  return n;
}

const std::vector<RiskAdjustment> kFamilies = {
    RiskAdjustment::identity(), RiskAdjustment::ez_power(-1, 0.5),
    RiskAdjustment::exponential(2.0), RiskAdjustment::hara(-2, 0.5)};

}  // namespace

TEST_CASE("analytic derivatives agree with central differences") {
  for (const auto& phi : kFamilies) {
    for (double x : {0.4, 1.0, 3.7}) {
      for (int order : {1, 2}) {
        const double fd = num::central_diff(
            [&](double t) { return phi_eval(phi, t, order - 1); }, x, 1, 1e-5);
        CHECK(phi_eval(phi, x, order) ==
              doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("phi inverse round trips on every family") {
  for (const auto& phi : kFamilies) {
    for (double x : {0.3, 1.0, 5.0}) {
      CHECK(phi_inverse(phi, phi_eval(phi, x)) ==
            doctest::Approx(x).epsilon(1e-9));
    }
  }
  // custom phi falls back to bracketed Newton
  auto cust = RiskAdjustment::custom_phi(
      [](double x, int o) -> double {
        switch (o) {
          case 0: return x + std::log(x);
          case 1: return 1 + 1 / x;
          case 2: return -1 / (x * x);
          case 3: return 2 / (x * x * x);
          case 4: return -6 / (x * x * x * x);
        }
        return 0;
      },
      1e-6, 1e6, "x+log x");
  CHECK(phi_inverse(cust, phi_eval(cust, 2.5)) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("range violations in phi inverse") {
  CHECK_THROWS_AS(phi_inverse(RiskAdjustment::exponential(1.0), 0.5),
                  RangeViolation);  // -exp(-x) < 0 always
}

TEST_CASE("parameter validation per family") {
  CHECK_THROWS_AS(RiskAdjustment::ez_power(0.0, 0.5), ParamOutOfRange);
  CHECK_THROWS_AS(RiskAdjustment::ez_power(0.8, 0.5), ParamOutOfRange);
  CHECK_THROWS_AS(RiskAdjustment::exponential(-1), ParamOutOfRange);
  CHECK_THROWS_AS(RiskAdjustment::hara(0.0, 0.5), ParamOutOfRange);
}

TEST_CASE("Arrow-Pratt indices match closed forms") {
  // HS: phi = -exp(-x/theta), A = 1/theta, R = x/theta
  const auto e = arrow_pratt(RiskAdjustment::exponential(2.0), 3.0);
  CHECK(e.A == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e.R == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(e.Rprime == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(e.Rsecond == doctest::Approx(0.0).epsilon(1e-9));
  // EZ: R = 1 - alpha/rho constant
  for (double x : {0.5, 2.0, 9.0}) {
    CHECK(arrow_pratt(RiskAdjustment::ez_power(-1, 0.5), x).R ==
          doctest::Approx(3.0).epsilon(1e-10));
  }
}

TEST_CASE("ER measure reduces to A(x) - beta A(beta x + y)") {
  KPModel m{RiskAdjustment::exponential(2.0), Felicity::linear(), 0.9};
  // CARA: ER = (1 - beta)/theta everywhere
  CHECK(er_measure(m, 1.0, 3.0) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(er_measure(m, 7.0, 0.2) == doctest::Approx(0.05).epsilon(1e-12));
  // identity phi: ER = 0
  KPModel id{RiskAdjustment::identity(), Felicity::linear(), 0.9};
  CHECK(er_measure(id, 1.0, 3.0) == doctest::Approx(0.0));
}

TEST_CASE("classification of the closed families") {
  const auto ez = classify(RiskAdjustment::ez_power(-1, 0.5), 1.0);
  CHECK(ez.dara);
  CHECK(ez.irra);
  CHECK(ez.sca);
  CHECK(ez.upi);
  CHECK(ez.concave);
  CHECK_FALSE(ez.grid_verified);

  const auto h = classify(RiskAdjustment::hara(-2, 0.5), 1.0);
  CHECK(h.irra);       // b >= 0
  CHECK_FALSE(h.sca);  // b != 0 breaks R'' >= 0
  CHECK(h.upi);

  const auto h0 = classify(RiskAdjustment::hara(-2, 0.0), 1.0);
  CHECK(h0.irra);
  CHECK(h0.sca);  // b = 0 collapses to constant R

  const auto drra = classify(RiskAdjustment::hara(-0.5, -0.4), 1.0);
  CHECK_FALSE(drra.irra);
  CHECK(drra.decreasing_R.has_value());
}

TEST_CASE("an IARA adjustment fails UPI with a witnessed grid point") {
  auto iara = RiskAdjustment::custom_phi(
      [](double x, int o) -> double {
        switch (o) {
          case 0: return x - x * x / 2;
          case 1: return 1 - x;
          case 2: return -1;
          default: return 0;
        }
      },
      1e-9, 0.999, "x-x^2/2");
  const auto c = classify(iara, 1.0, {0.01, 0.95, 80});
  CHECK(c.grid_verified);
  CHECK_FALSE(c.upi);
  CHECK(c.upi_violation.has_value());
  CHECK_FALSE(c.dara);
}

TEST_CASE("KP evaluation matches a hand-computed HS tree") {
  // V = c0 + beta * (-theta log E exp(-V1/theta)), V1 = c1
  KPModel m{RiskAdjustment::exponential(1.0), Felicity::linear(), 0.9};
  const auto d = validate_and_canonicalize(
      node(1, {{0.5, leaf(2)}, {0.5, leaf(1)}}));
  const double ce = -std::log(0.5 * std::exp(-2.0) + 0.5 * std::exp(-1.0));
  CHECK(kp_evaluate(m, d) == doctest::Approx(1.0 + 0.9 * ce).epsilon(1e-12));
  // identity phi reduces to expected utility
  KPModel id{RiskAdjustment::identity(), Felicity::linear(), 0.9};
  CHECK(kp_evaluate(id, d) == doctest::Approx(1.0 + 0.9 * 1.5).epsilon(1e-12));
  // present equivalent inverts at the root felicity
  CHECK(present_equivalent(id, d) ==
        doctest::Approx(1.0 + 0.9 * 1.5).epsilon(1e-12));
}

TEST_CASE("felicity families and their inverses") {
  CHECK(Felicity::power(0.5)(4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(Felicity::power(0.5).inverse(4.0) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(Felicity::scaled_power(3, 1.0 / 3)(8.0) ==
        doctest::Approx(6.0).epsilon(1e-12));
  CHECK(Felicity::log_u()(std::exp(2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Felicity::power(1.5), ParamOutOfRange);
  CHECK_THROWS_AS(Felicity::power(0.5)(-1.0), DomainViolation);
}

TEST_CASE("concave adjustments prefer negative correlation") {
  KPModel m{RiskAdjustment::exponential(1.0), Felicity::linear(), 0.9};
  CHECK(hedging_compare(m, 2.0, 1.0) == HedgingVerdict::prefers_negative);
  KPModel id{RiskAdjustment::identity(), Felicity::linear(), 0.9};
  CHECK(hedging_compare(id, 2.0, 1.0) == HedgingVerdict::indifferent);
}

TEST_CASE("CAA of the exponential family is the power closed form") {
  for (double theta : {1.5, 2.0, 5.0}) {
    const auto e = RiskAdjustment::exponential(theta);
    for (double x : {0.1, 0.7, 2.0, 10.0}) {
      const double want = std::pow(x, 1 - 1 / theta) / (1 - 1 / theta);
      CHECK(caa_transform(e, x) == doctest::Approx(want).epsilon(1e-8));
    }
  }
  // theta < 1 makes the integral diverge at 0
  CHECK_THROWS_AS(caa_transform(RiskAdjustment::exponential(0.8), 1.0),
                  SingularIntegrand);
}

TEST_CASE("applying CAA twice returns the identity") {
  const auto once = caa_of(RiskAdjustment::exponential(2.0));
  for (double x : {0.1, 1.0, 5.0}) {
    CHECK(caa_transform(once, x) == doctest::Approx(x).epsilon(1e-7));
  }
}
