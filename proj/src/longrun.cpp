#include "corrpref/longrun.hpp"

#include <cmath>
#include <functional>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"

namespace corrpref {

namespace {

void require_log_case(const LrrParams& p) {
  if (std::fabs(p.rho) > 1e-12)
    throw UnsupportedRho("long-run closed forms are stated for rho = 0 only");
  if (!(p.a >= 0 && p.a < 1)) throw ParamOutOfRange("a must lie in [0,1)");
  if (!(p.beta > 0 && p.beta < 1))
    throw ParamOutOfRange("beta must lie in (0,1)");
}

double risk_base(const LrrParams& p) {
  return 0.5 * p.alpha * p.beta * p.sigma * p.sigma / (1 - p.beta);
}

double loading_persistent(const LrrParams& p) {
  const double f = p.vol_loading * p.beta / (1 - p.beta * p.a);
  return f * f;
}

double loading_iid(const LrrParams& p) {
  const double f = p.vol_loading * p.beta;
  return f * f;
}

}  // namespace

double lrr_log_utility(const LrrParams& p, bool persistent) {
  require_log_case(p);
  const double growth = p.beta * p.drift / (1 - p.beta);
  const double state =
      persistent ? p.beta * p.x0 / (1 - p.beta * p.a) : p.beta * p.x0;
  const double load = persistent ? loading_persistent(p) : loading_iid(p);
  return p.log_c0 + state + growth + risk_base(p) * (1 + load);
}

double lrr_persistence_premium(const LrrParams& p) {
  require_log_case(p);
  const double state =
      p.beta * p.x0 / (1 - p.beta * p.a) - p.beta * p.x0;
  return 1 - std::exp(state + risk_base(p) *
                                  (loading_persistent(p) - loading_iid(p)));
}

double lrr_timing_premium(const LrrParams& p) {
  require_log_case(p);
  // As displayed: beta^2 sigma^2/(1-beta^2) base, vol loading entering
  // linearly in the persistent amplification factor.
  const double base = 0.5 * p.alpha * p.beta * p.beta * p.sigma * p.sigma /
                      (1 - p.beta * p.beta);
  const double denom = (1 - p.beta * p.a) * (1 - p.beta * p.a);
  return 1 - std::exp(base * (1 + p.vol_loading * p.beta * p.beta / denom));
}

VolatilityMatch match_longrun_volatility(const LrrParams& p) {
  require_log_case(p);
  VolatilityMatch out;
  const double vl2 = p.vol_loading * p.vol_loading;
  out.sigma_iid = p.sigma * std::sqrt((1 + vl2 / (1 - p.a * p.a)) / (1 + vl2));
  const double s2 = p.sigma * p.sigma, si2 = out.sigma_iid * out.sigma_iid;
  const double state = p.beta * p.x0 / (1 - p.beta * p.a) - p.beta * p.x0;
  const double coeff = 0.5 * p.alpha * p.beta / (1 - p.beta);
  out.premium_at_match =
      1 - std::exp(state + coeff * (s2 * (1 + loading_persistent(p)) -
                                    si2 * (1 + loading_iid(p))));
  return out;
}

double match_rohde_yu(double target_dpos, double rho, double beta, double hi,
                      double lo) {
  if (!(target_dpos > 0 && target_dpos < 1))
    throw NoBracket("target must lie strictly in (0,1); the risk-neutral "
                    "limit alpha = 0 is excluded");

  std::function<double(double)> measure;
  if (std::fabs(rho) < 1e-12) {
    // Log-felicity closed form for the Rohde-Yu gap.
    measure = [=](double alpha) {
      const double num = std::pow(
          0.5 * (std::pow(lo, (1 + beta) * alpha) +
                 std::pow(hi, (1 + beta) * alpha)),
          beta / alpha);
      const double den = std::pow(
          0.5 * (std::pow(lo, alpha) + std::pow(hi, alpha)),
          2 * beta / alpha);
      return 1 - num / den;
    };
  } else {
    measure = [=](double alpha) {
      KPModel m{RiskAdjustment::ez_power(alpha, rho), Felicity::power(rho),
                beta};
      return dpos_measure(m, hi, lo);
    };
  }

  // The measure is not monotone over all alpha < 0; walk outward from 0 and
  // bisect on the first straddling interval, picking the root nearest zero.
  const double hi_a = -1e-8;
  if (measure(hi_a) >= target_dpos)
    throw NoBracket("target already reached in the alpha -> 0 limit");
  double lo_a = -1e-4;
  while (measure(lo_a) < target_dpos) {
    lo_a *= 4.0;
    if (lo_a < -50.0)
      throw NoBracket("target not bracketed by alpha in [-50, 0)");
  }
  return num::bisect([&](double a) { return measure(a) - target_dpos; }, lo_a,
                     hi_a, 1e-8);
}

HaraComparison hara_comparison_integrals(const RiskAdjustment& hara,
                                         const RiskAdjustment& ez,
                                         const Felicity& u, double beta,
                                         double lo, double hi) {
  const double a = u(lo), b = u(hi);
  if (!(a < b)) throw ParamOutOfRange("need u(lo) < u(hi)");
  HaraComparison out;
  KPModel mh{hara, Felicity::linear(), beta};
  KPModel me{ez, Felicity::linear(), beta};
  out.er_hara = num::integrate(
      [&](double x) { return er_measure(mh, x, x); }, a, b, 1e-10);
  out.er_ez = num::integrate(
      [&](double x) { return er_measure(me, x, x); }, a, b, 1e-10);
  // Normalized by lo, matching the printed reference integrand.
  out.rra_hara = num::integrate(
      [&](double x) { return arrow_pratt(hara, x).R / lo; }, a, b, 1e-10);
  return out;
}

}  // namespace corrpref
