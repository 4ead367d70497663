#pragma once

#include "corrpref/premia.hpp"
#include "corrpref/risk.hpp"

namespace corrpref {

// Long-run-risk process parameters (log consumption growth with a small
// persistent component). `vol_loading` is the loading of the persistent state
// on the consumption shock and `drift` the mean growth rate; both are renamed
// from the usual symbols to avoid clashing with the risk adjustment and the
// lottery notation.
struct LrrParams {
  double sigma = 0.0078;
  double vol_loading = 0.044;
  double a = 0.9790;       // persistence of the long-run state, in [0,1)
  double beta = 0.998;
  double alpha = -6.5;     // risk parameter; risk aversion = 1 - alpha
  double rho = 0.0;        // felicity exponent; closed forms need rho = 0
  double x0 = 0.0;         // initial long-run state
  double drift = 0.0;      // mean log growth
  double log_c0 = 0.0;
};

// log U0 of the persistent (persistent=true) or iid lottery, log-felicity
// closed forms.
double lrr_log_utility(const LrrParams& p, bool persistent);

// Fraction of consumption given up to remove all persistence.
double lrr_persistence_premium(const LrrParams& p);

// Timing premium closed form. Note: the display this implements carries the
// volatility loading linearly where the persistence premium carries it
// squared; it is reproduced as displayed.
double lrr_timing_premium(const LrrParams& p);

struct VolatilityMatch {
  double sigma_iid = 0;
  double premium_at_match = 0;
};

// sigma_iid equating long-run variances, and the persistence premium
// recomputed against the matched iid leg.
VolatilityMatch match_longrun_volatility(const LrrParams& p);

// alpha such that the Rohde-Yu measure on the (hi, lo) two-period lotteries
// hits target_dpos; bisection to 1e-8, log-felicity closed form when rho = 0.
double match_rohde_yu(double target_dpos, double rho, double beta, double hi,
                      double lo);

struct HaraComparison {
  double er_hara = 0;
  double er_ez = 0;
  double rra_hara = 0;
};

// ER(x, x) integrals for the two adjustments over [u(lo), u(hi)], plus the
// relative-risk-aversion integral of the HARA member normalized by lo (the
// normalization the reference values use).
HaraComparison hara_comparison_integrals(const RiskAdjustment& hara,
                                         const RiskAdjustment& ez,
                                         const Felicity& u, double beta,
                                         double lo, double hi);

}  // namespace corrpref
