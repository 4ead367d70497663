#pragma once

#include "corrpref/risk.hpp"

namespace corrpref {

// Infinite-horizon consumption lottery with a one-shot initial draw: either
// redrawn independently every period (iid) or frozen forever after the first
// draw (perfectly correlated).
struct StationaryLottery {
  enum class Kind { iid, perfectly_correlated };
  Kind kind = Kind::iid;
  Distribution dist;  // (consumption, probability)
  double c0 = 1.0;
};

// Monotone value iteration for V(c, m) = (c^rho + beta*CE(m)^rho)^(1/rho)
// starting from the expected-utility fixed point; iterates must be
// nonincreasing, and the fixed-point residual at convergence is <= 10*tol.
double value_iterate(const RiskAdjustment& phi, double rho, double beta,
                     const StationaryLottery& sl, double tol = 1e-10);

struct IidCorrComparison {
  bool iid_weakly_preferred = false;
  double v_iid = 0;
  double v_corr = 0;
};

// V(c0, iid) vs V(c0, perfectly correlated); the correlated value uses the
// constant-stream closed form c/(1-beta)^(1/rho).
IidCorrComparison compare_iid_corr(const RiskAdjustment& phi, double rho,
                                   double beta, const Distribution& l,
                                   double c0);

}  // namespace corrpref
