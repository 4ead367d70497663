#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace corrpref {

// Finite-support temporal lottery: a tree of (consumption, distribution over
// subtrees). A leaf has no branches. All root-to-leaf paths share one depth.
struct TemporalLottery {
  double consumption = 0.0;
  std::vector<std::pair<double, TemporalLottery>> branches;

  bool is_leaf() const { return branches.empty(); }
  int depth() const;  // 0 for a leaf
};

// Three-way structural order used everywhere a canonical ordering is needed:
// by consumption, then recursively by branches (children first, then
// probabilities rounded to 12 decimals). Operands must be canonical.
int compare_canonical(const TemporalLottery& a, const TemporalLottery& b);

struct CanonicalLess {
  bool operator()(const TemporalLottery& a, const TemporalLottery& b) const {
    return compare_canonical(a, b) < 0;
  }
};

// Depth-first (consumption, probability) key with probabilities rounded to 12
// decimals; stable across runs, used for display and golden files.
std::string canonical_key(const TemporalLottery& d);

// Sorts branches canonically, merges branches with identical canonical
// children, and checks all invariants (stochastic rows, uniform depth,
// nonnegative consumption).
TemporalLottery validate_and_canonicalize(const TemporalLottery& raw);

// Two-stage encoding for garbling checks: columns are the canonical
// continuation subtrees, row i the conditional continuation distribution of
// the i-th support element, mu the probability of each row.
struct MatrixPair {
  std::vector<TemporalLottery> outcomes;  // canonical columns, ascending
  Eigen::MatrixXd M;                      // row-stochastic
  Eigen::RowVectorXd mu;                  // distribution over rows
};

// Extracts (M, mu) at `stage`: the lottery must be deterministic (single
// branch) before the stage. Canonicalization has already merged identical
// support elements, so rows are the canonical branches in order.
MatrixPair to_matrix_pair(const TemporalLottery& d, int stage);

// (m1, m2) pair describing a horizon-2 lottery in which the period-1
// consumption determines the continuation (the set D*).
struct ConditionalForm {
  std::map<double, double> m1;                         // t=1 marginal
  std::map<double, std::map<double, double>> m2;       // c1 -> t=2 distribution
};

ConditionalForm to_conditional_form(const TemporalLottery& d);
TemporalLottery from_conditional_form(const ConditionalForm& cf, double c0);

// Parametric families from the persistence/timing premium analysis. All
// return canonical trees.
using Distribution = std::vector<std::pair<double, double>>;  // (consumption, prob)

// (c0, sum_c l(c) (c, l)): period-1 draw from l, independent redraw at t=2.
TemporalLottery build_iid(const Distribution& l, double c0);
// (c0, sum_c l(c) (c, delta_c)): perfectly persistent version of l.
TemporalLottery build_corr_perfect(const Distribution& l, double c0);
// (c0, 1/2 (x, (1/2+e/2)x + (1/2-e/2)y) + 1/2 (y, flipped)).
TemporalLottery build_corr(double eps, double c0, double x, double y);
// corr(0) with all post-c0 consumption scaled by (1-pi).
TemporalLottery build_iid_scaled(double pi, double c0, double x, double y);
// (c0, 1/2 (k, (1/2+e/2)x + (1/2-e/2)y) + 1/2 (k, flipped)): risk resolves
// gradually between t=1 and t=2.
TemporalLottery build_gradual(double eps, double c0, double k, double x, double y);
// (c0, 1/2 (k(1-pi), x(1-pi)) + 1/2 (k(1-pi), y(1-pi))): resolves at t=1.
TemporalLottery build_early(double pi, double c0, double k, double x, double y);
// (c0, 1/2 (x, delta_y) + 1/2 (y, delta_x)): perfectly negatively correlated.
TemporalLottery build_neg_corr(double c0, double x, double y);

// JSON wire format: {"c": n, "next": [{"p": n, "node": {...}}]}; leaf {"c": n}.
TemporalLottery lottery_from_json(const nlohmann::json& j);
nlohmann::json lottery_to_json(const TemporalLottery& d);
TemporalLottery load_lottery_file(const std::string& path);

}  // namespace corrpref
