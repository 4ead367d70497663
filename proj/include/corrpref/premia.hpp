#pragma once

#include "corrpref/risk.hpp"

namespace corrpref {

// Exact premium plus the Taylor-style approximation around full correlation
// (eps = 1). `terms` splits the approximation into its level / slope /
// curvature contributions; `slope_integral` is the relative-risk-aversion
// difference integral driving the slope term.
struct PremiumReport {
  double epsilon = 0;
  double exact_pi = 0;
  double approx_pi = 0;
  double level = 0;      // anchor value of the expansion
  double slope = 0;      // first-order contribution at this epsilon
  double curvature = 0;  // second-order contribution at this epsilon
  double slope_integral = 0;
  double gap = 0;        // exact - approx
};

// pi solving V0(d^corr(eps)) = V0(d^iid(pi)) by bisection to 1e-10.
// The model's felicity should be identity for the approximation to apply.
PremiumReport persistence_premium(const KPModel& model, double c0, double x,
                                  double y, double eps);

// Second-order expansion of pi(eps) around eps = 1, anchored at the exact
// pi(1) (constants from the f/g Taylor identity, integral by quadrature).
PremiumReport persistence_premium_approx(const KPModel& model, double c0,
                                         double x, double y, double eps);

// pi solving V0(d^gradual(eps)) = V0(d^early(pi)); pi(1) = 0.
PremiumReport timing_premium(const KPModel& model, double c0, double k,
                             double x, double y, double eps);

// One-term expansion pi ~ k1 * integral * (1 - eps) with
// k1 = -beta(phi(x)-phi(y))/(4 g'(0)) and analytic g'(0).
double timing_premium_approx(const KPModel& model, double c0, double k,
                             double x, double y, double eps);

// Rohde-Yu correlation-aversion measure: relative gap of present certainty
// equivalents between the iid and perfectly correlated two-period lotteries
// on {hi, lo} with equal weights; c0 contributes zero felicity.
double dpos_measure(const KPModel& model, double hi, double lo);

}  // namespace corrpref
