#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "corrpref/lottery.hpp"

namespace corrpref {

struct GarblingWitness {
  Eigen::MatrixXd G;  // row-stochastic, M' = G M and mu' G = mu
  double residual = 0;
};

enum class InformativenessVerdict { yes, no, incomparable_marginals };

struct InformativenessResult {
  InformativenessVerdict verdict;
  std::optional<GarblingWitness> witness;
};

// Decides d >=_B d2 at the given stage (both must be deterministic before it):
// equal consumption marginals plus LP-feasibility of a garbling G with
// M2 = G*M, mu2*G = mu.
InformativenessResult is_more_informative(const TemporalLottery& d,
                                          const TemporalLottery& d2,
                                          int stage = 0);

struct IecitStep {
  double c, c_prime;  // distinct support points of m1
  double epsilon;     // mass shift (>= 0)
};

// The four Definition-5 conditional updates; m1 unchanged.
ConditionalForm apply_iecit(const ConditionalForm& cf, const IecitStep& step);

// Witness check for >=_C: replaying the chain from `base` must reproduce
// `target` within 1e-9 (false on mismatch or overflow).
bool verify_corr_chain(const ConditionalForm& target,
                       const ConditionalForm& base,
                       const std::vector<IecitStep>& chain);

// Proposition 3 check: every prefix of the chain applied to d^iid(l) is more
// informative than the independent base; on two-point supports every prefix
// additionally dominates every shorter prefix (the pairwise form fails on
// larger supports, see the implementation note).
bool check_prop3(const Distribution& l, const std::vector<IecitStep>& chain);

}  // namespace corrpref
