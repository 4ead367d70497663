#include "corrpref/info_order.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"

namespace corrpref {

namespace {

constexpr double kTol = 1e-9;

// consumption marginal at the compared stage's first period
std::map<double, double> stage_marginal(const TemporalLottery& d, int stage) {
  const TemporalLottery* node = &d;
  for (int s = 0; s < stage; ++s) {
    if (node->branches.size() != 1)
      throw StageOutOfRange("lottery not deterministic before stage");
    node = &node->branches.front().second;
  }
  std::map<double, double> m;
  for (const auto& [p, child] : node->branches) m[child.consumption] += p;
  return m;
}

bool marginals_equal(const std::map<double, double>& a,
                     const std::map<double, double>& b) {
  if (a.size() != b.size()) return false;
  auto it = b.begin();
  for (const auto& [c, p] : a) {
    if (it->first != c || std::fabs(it->second - p) > kTol) return false;
    ++it;
  }
  return true;
}

// re-express a matrix pair over a common column universe
Eigen::MatrixXd remap_columns(const MatrixPair& mp,
                              const std::vector<TemporalLottery>& columns) {
  Eigen::MatrixXd M =
      Eigen::MatrixXd::Zero(mp.M.rows(), static_cast<int>(columns.size()));
  for (int j = 0; j < mp.M.cols(); ++j) {
    int target = -1;
    for (int k = 0; k < static_cast<int>(columns.size()); ++k) {
      if (compare_canonical(mp.outcomes[j], columns[k]) == 0) {
        target = k;
        break;
      }
    }
    if (target < 0) throw DimensionMismatch("column missing from universe");
    M.col(target) = mp.M.col(j);
  }
  return M;
}

}  // namespace

InformativenessResult is_more_informative(const TemporalLottery& d,
                                          const TemporalLottery& d2,
                                          int stage) {
  if (!marginals_equal(stage_marginal(d, stage), stage_marginal(d2, stage)))
    return {InformativenessVerdict::incomparable_marginals, std::nullopt};

  MatrixPair a = to_matrix_pair(d, stage);   // the allegedly more informative
  MatrixPair b = to_matrix_pair(d2, stage);  // candidate garbling

  // common column universe (union, canonical order)
  std::map<TemporalLottery, int, CanonicalLess> uni;
  for (const auto& o : a.outcomes) uni.emplace(o, 0);
  for (const auto& o : b.outcomes) uni.emplace(o, 0);
  std::vector<TemporalLottery> columns;
  for (const auto& [key, _] : uni) columns.push_back(key);
  // terminal supports must agree (zero-probability points were dropped by
  // canonicalization already)
  if (uni.size() != a.outcomes.size() || uni.size() != b.outcomes.size())
    return {InformativenessVerdict::incomparable_marginals, std::nullopt};

  const Eigen::MatrixXd M = remap_columns(a, columns);
  const Eigen::MatrixXd Mp = remap_columns(b, columns);
  const int r = static_cast<int>(M.rows());
  const int rp = static_cast<int>(Mp.rows());
  const int k = static_cast<int>(columns.size());

  // feasibility LP over G (rp x r): Mp = G M, mu' G = mu, rows of G stochastic
  const int nvar = rp * r;
  const int ncon = rp * k + r + rp;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(ncon, nvar);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ncon);
  int row = 0;
  for (int i = 0; i < rp; ++i) {
    for (int col = 0; col < k; ++col, ++row) {
      for (int j = 0; j < r; ++j) A(row, i * r + j) = M(j, col);
      rhs(row) = Mp(i, col);
    }
  }
  for (int j = 0; j < r; ++j, ++row) {
    for (int i = 0; i < rp; ++i) A(row, i * r + j) = b.mu(i);
    rhs(row) = a.mu(j);
  }
  for (int i = 0; i < rp; ++i, ++row) {
    for (int j = 0; j < r; ++j) A(row, i * r + j) = 1.0;
    rhs(row) = 1.0;
  }

  auto sol = num::simplex_feasible(A, rhs, kTol);
  if (!sol) return {InformativenessVerdict::no, std::nullopt};

  GarblingWitness w;
  w.G = Eigen::MatrixXd::Zero(rp, r);
  for (int i = 0; i < rp; ++i)
    for (int j = 0; j < r; ++j) w.G(i, j) = (*sol)(i * r + j);
  w.residual = std::max((w.G * M - Mp).cwiseAbs().maxCoeff(),
                        (b.mu * w.G - a.mu).cwiseAbs().maxCoeff());
  return {InformativenessVerdict::yes, w};
}

ConditionalForm apply_iecit(const ConditionalForm& cf, const IecitStep& step) {
  const double c = step.c, cp = step.c_prime, eps = step.epsilon;
  if (c == cp) throw ParamOutOfRange("IECIT needs c != c'");
  if (eps < 0) throw ParamOutOfRange("IECIT needs epsilon >= 0");
  auto it_c = cf.m1.find(c);
  auto it_cp = cf.m1.find(cp);
  if (it_c == cf.m1.end() || it_c->second <= 0 || it_cp == cf.m1.end() ||
      it_cp->second <= 0)
    throw ZeroMarginal("IECIT pair must have positive m1 mass");

  ConditionalForm out = cf;
  auto bump = [&](double given, double at, double delta) {
    double& v = out.m2[given][at];
    v += delta;
    if (v < -1e-12 || v > 1 + 1e-12)
      throw MassOverflow("conditional probability left [0,1]");
    v = std::min(std::max(v, 0.0), 1.0);
  };
  bump(c, c, eps / it_c->second);
  bump(c, cp, -eps / it_c->second);
  bump(cp, cp, eps / it_cp->second);
  bump(cp, c, -eps / it_cp->second);
  return out;
}

bool verify_corr_chain(const ConditionalForm& target,
                       const ConditionalForm& base,
                       const std::vector<IecitStep>& chain) {
  ConditionalForm cur = base;
  try {
    for (const auto& step : chain) cur = apply_iecit(cur, step);
  } catch (const Error&) {
    return false;
  }
  if (cur.m1.size() != target.m1.size()) return false;
  for (const auto& [c, p] : target.m1) {
    auto it = cur.m1.find(c);
    if (it == cur.m1.end() || std::fabs(it->second - p) > kTol) return false;
  }
  for (const auto& [c, nu] : target.m2) {
    auto it = cur.m2.find(c);
    if (it == cur.m2.end()) return false;
    for (const auto& [c2, q] : nu) {
      auto jt = it->second.find(c2);
      const double have = jt == it->second.end() ? 0.0 : jt->second;
      if (std::fabs(have - q) > kTol) return false;
    }
    for (const auto& [c2, q] : it->second) {
      if (nu.find(c2) == nu.end() && std::fabs(q) > kTol) return false;
    }
  }
  return true;
}

bool check_prop3(const Distribution& l, const std::vector<IecitStep>& chain) {
  ConditionalForm cf;
  for (const auto& [c, p] : l) {
    cf.m1[c] += p;
    for (const auto& [c2, q] : l) cf.m2[c][c2] += q;
  }
  std::vector<TemporalLottery> prefixes;
  prefixes.push_back(from_conditional_form(cf, 1.0));
  ConditionalForm cur = cf;
  for (const auto& step : chain) {
    cur = apply_iecit(cur, step);
    prefixes.push_back(from_conditional_form(cur, 1.0));
  }
  // Every prefix must dominate the independent base. Pairwise dominance
  // between intermediate prefixes additionally holds on two-point supports,
  // but not in general: on supports of three or more points even a single
  // IECIT applied to an already-correlated form need not admit a garbling
  // matrix (LP-infeasible counterexamples are easy to generate), so only the
  // anchored comparisons are asserted there.
  const size_t pair_limit = l.size() == 2 ? prefixes.size() : 1;
  for (size_t j = 1; j < prefixes.size(); ++j) {
    for (size_t i = 0; i < std::min(j, pair_limit); ++i) {
      auto res = is_more_informative(prefixes[j], prefixes[i], 0);
      if (res.verdict != InformativenessVerdict::yes) return false;
    }
  }
  return true;
}

}  // namespace corrpref
