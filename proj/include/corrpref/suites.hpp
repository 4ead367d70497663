#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrpref/info_order.hpp"
#include "corrpref/risk.hpp"

namespace corrpref {

struct SuiteViolation {
  std::string instance;
  double observed = 0;
  double expected = 0;
};

struct SuiteReport {
  int cases_run = 0;
  std::vector<SuiteViolation> violations;
  std::uint64_t seed = 0;
  std::string detail;

  bool pass() const { return violations.empty(); }
};

// Random (l, IECIT chain, beta, u) instances: with phi concave + UPI + IRRA,
// every chain prefix must be weakly dispreferred to the iid base, and on
// two-point supports the value must also be nonincreasing step by step.
SuiteReport theorem1_forward(const RiskAdjustment& phi, int n,
                             std::uint64_t seed);

// The converse construction for a non-IRRA phi: picks x = zbar/(1+beta),
// y = z on a witnessed decreasing-R interval and searches for eps < 1 with
// V(d^1) > V(d^eps). Finding the strict violation is the pass condition.
SuiteReport theorem1_converse(const RiskAdjustment& phi);

// Random early-vs-late non-instrumental information pairs: the sign of
// V(early) - V(late) must agree with the pointwise ER verdict whenever the
// verdict is uniform over the spanned utility interval.
SuiteReport prop1_suite(const RiskAdjustment& phi, double beta, int n,
                        std::uint64_t seed);

}  // namespace corrpref
