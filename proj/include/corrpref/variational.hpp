#pragma once

#include <vector>

#include "corrpref/risk.hpp"

namespace corrpref {

// A candidate alternative distribution over continuation nodes together with
// its likelihood ratio against the base.
struct DiscreteDistortion {
  std::vector<double> base;
  std::vector<double> alt;
  std::vector<double> likelihood_ratio;  // alt/base, 0 where both vanish

  // Validates stochasticity and absolute continuity (infinite ratios allowed
  // only through the +inf cost path of the entropy cost).
  static DiscreteDistortion make(std::vector<double> base,
                                 std::vector<double> alt);
};

// theta * E_base[(dl/dm) log(dl/dm)]; +infinity when absolute continuity
// fails.
double cost_relative_entropy(const DiscreteDistortion& dd, double theta);

// Renyi-based cost for the EZ adjustment with q = alpha/(alpha-rho):
// E_alt[V] * (exp(((1-q)/q) R_q(alt||base)) - 1).
double cost_ez_renyi(const DiscreteDistortion& dd,
                     const std::vector<double>& continuation_values,
                     double alpha, double rho);

struct VariationalResult {
  double value = 0;
  std::vector<double> minimizer;
};

// min over the simplex of E_l[V] + I(l||base) for the model's cost (relative
// entropy for Exponential, the Renyi cost for EZPower, zero-cost passthrough
// for Identity). Softmax-reparameterized gradient descent with restarts.
VariationalResult variational_value(const KPModel& model,
                                    const std::vector<double>& node_values,
                                    const std::vector<double>& base);

// Max over interior nodes of |recursive certainty equivalent - variational
// minimum| on the given lottery.
double duality_gap(const KPModel& model, const TemporalLottery& d);

}  // namespace corrpref
