#include "corrpref/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "corrpref/errors.hpp"

namespace corrpref {

namespace {

constexpr double kProbSumTol = 1e-12;

double round_prob(double p) { return std::round(p * 1e12) / 1e12; }

}  // namespace

int TemporalLottery::depth() const {
  if (is_leaf()) return 0;
  return 1 + branches.front().second.depth();
}

int compare_canonical(const TemporalLottery& a, const TemporalLottery& b) {
  if (a.consumption != b.consumption)
    return a.consumption < b.consumption ? -1 : 1;
  const size_t n = std::min(a.branches.size(), b.branches.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare_canonical(a.branches[i].second, b.branches[i].second);
    if (c != 0) return c;
    double pa = round_prob(a.branches[i].first);
    double pb = round_prob(b.branches[i].first);
    if (pa != pb) return pa < pb ? -1 : 1;
  }
  if (a.branches.size() != b.branches.size())
    return a.branches.size() < b.branches.size() ? -1 : 1;
  return 0;
}

std::string canonical_key(const TemporalLottery& d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d.consumption);
  std::string out = buf;
  if (!d.is_leaf()) {
    out += "(";
    for (const auto& [p, child] : d.branches) {
      std::snprintf(buf, sizeof(buf), "%.12f:", round_prob(p));
      out += buf;
      out += canonical_key(child);
      out += ";";
    }
    out += ")";
  }
  return out;
}

namespace {

TemporalLottery canonicalize_rec(const TemporalLottery& raw) {
  TemporalLottery out;
  out.consumption = raw.consumption;
  if (out.consumption < 0)
    throw NegativeConsumption("consumption " + std::to_string(out.consumption));
  if (raw.is_leaf()) return out;

  double sum = 0;
  int child_depth = -1;
  for (const auto& [p, child] : raw.branches) {
    if (!(p > 0))
      throw NonStochastic("branch probability must be positive, got " +
                          std::to_string(p));
    sum += p;
    TemporalLottery c = canonicalize_rec(child);
    int cd = c.depth();
    if (child_depth < 0) child_depth = cd;
    if (cd != child_depth) throw RaggedHorizon("unequal subtree depths");
    out.branches.emplace_back(p, std::move(c));
  }
  if (std::fabs(sum - 1.0) > kProbSumTol)
    throw NonStochastic("branch probabilities sum to " + std::to_string(sum));

  std::sort(out.branches.begin(), out.branches.end(),
            [](const auto& a, const auto& b) {
              return compare_canonical(a.second, b.second) < 0;
            });
  std::vector<std::pair<double, TemporalLottery>> merged;
  for (auto& br : out.branches) {
    if (!merged.empty() &&
        compare_canonical(merged.back().second, br.second) == 0) {
      merged.back().first += br.first;
    } else {
      merged.push_back(std::move(br));
    }
  }
  out.branches = std::move(merged);
  return out;
}

}  // namespace

TemporalLottery validate_and_canonicalize(const TemporalLottery& raw) {
  return canonicalize_rec(raw);
}

MatrixPair to_matrix_pair(const TemporalLottery& d, int stage) {
  if (stage < 0 || stage >= std::max(d.depth(), 1))
    throw StageOutOfRange("stage " + std::to_string(stage) + " for depth " +
                          std::to_string(d.depth()));
  const TemporalLottery* node = &d;
  for (int s = 0; s < stage; ++s) {
    if (node->branches.size() != 1)
      throw StageOutOfRange("lottery not deterministic before stage");
    node = &node->branches.front().second;
  }
  if (node->is_leaf()) throw StageOutOfRange("stage node is a leaf");

  // Row i = conditional continuation distribution of the i-th support
  // element (canonicalization already merged identical elements); a leaf
  // child acts as its own degenerate continuation.
  using Row = std::map<TemporalLottery, double, CanonicalLess>;
  std::vector<std::pair<Row, double>> rows;  // (distribution, probability)
  std::map<TemporalLottery, int, CanonicalLess> columns;
  for (const auto& [p, child] : node->branches) {
    Row row;
    if (child.is_leaf()) {
      row[child] = 1.0;
    } else {
      for (const auto& [q, sub] : child.branches) row[sub] += q;
    }
    for (const auto& [key, q] : row) columns.emplace(key, 0);
    rows.emplace_back(std::move(row), p);
  }

  MatrixPair mp;
  int idx = 0;
  for (auto& [key, col] : columns) {
    col = idx++;
    mp.outcomes.push_back(key);
  }
  mp.M = Eigen::MatrixXd::Zero(static_cast<int>(rows.size()), idx);
  mp.mu = Eigen::RowVectorXd::Zero(static_cast<int>(rows.size()));
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    mp.mu(i) = rows[i].second;
    for (const auto& [key, q] : rows[i].first) mp.M(i, columns.at(key)) = q;
  }
  return mp;
}

ConditionalForm to_conditional_form(const TemporalLottery& d) {
  if (d.depth() != 2)
    throw StageOutOfRange("conditional form needs horizon T=2, got depth " +
                          std::to_string(d.depth()));
  ConditionalForm cf;
  for (const auto& [p, child] : d.branches) {
    std::map<double, double> nu;
    for (const auto& [q, leaf] : child.branches) nu[leaf.consumption] += q;
    auto it = cf.m2.find(child.consumption);
    if (it != cf.m2.end()) {
      const auto& prev = it->second;
      bool same = prev.size() == nu.size() &&
                  std::equal(prev.begin(), prev.end(), nu.begin(),
                             [](const auto& a, const auto& b) {
                               return a.first == b.first &&
                                      std::fabs(a.second - b.second) < 1e-12;
                             });
      if (!same)
        throw NotInMStar("t=1 consumption " +
                         std::to_string(child.consumption) +
                         " has two distinct continuations");
    } else {
      cf.m2.emplace(child.consumption, std::move(nu));
    }
    cf.m1[child.consumption] += p;
  }
  return cf;
}

TemporalLottery from_conditional_form(const ConditionalForm& cf, double c0) {
  TemporalLottery d;
  d.consumption = c0;
  for (const auto& [c1, p] : cf.m1) {
    TemporalLottery mid;
    mid.consumption = c1;
    for (const auto& [c2, q] : cf.m2.at(c1)) {
      if (q <= 0) continue;
      TemporalLottery leaf;
      leaf.consumption = c2;
      mid.branches.emplace_back(q, leaf);
    }
    d.branches.emplace_back(p, std::move(mid));
  }
  return validate_and_canonicalize(d);
}

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

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw ParamOutOfRange(std::string(name) + " must lie in [0,1]");
}

void check_xy(double x, double y) {
  if (!(x > y && y > 0)) throw ParamOutOfRange("need x > y > 0");
}

}  // namespace

TemporalLottery build_iid(const Distribution& l, double c0) {
  TemporalLottery d;
  d.consumption = c0;
  for (const auto& [c1, p] : l) {
    TemporalLottery mid;
    mid.consumption = c1;
    for (const auto& [c2, q] : l) mid.branches.emplace_back(q, leaf(c2));
    d.branches.emplace_back(p, std::move(mid));
  }
  return validate_and_canonicalize(d);
}

TemporalLottery build_corr_perfect(const Distribution& l, double c0) {
  TemporalLottery d;
  d.consumption = c0;
  for (const auto& [c, p] : l)
    d.branches.emplace_back(p, node(c, {{1.0, leaf(c)}}));
  return validate_and_canonicalize(d);
}

TemporalLottery build_corr(double eps, double c0, double x, double y) {
  check_unit(eps, "eps");
  check_xy(x, y);
  auto branch = [&](double first, double hi, double lo) {
    if (eps == 1.0) return node(first, {{1.0, leaf(hi)}});
    return node(first, {{0.5 + eps / 2, leaf(hi)}, {0.5 - eps / 2, leaf(lo)}});
  };
  return validate_and_canonicalize(node(
      c0, {{0.5, branch(x, x, y)}, {0.5, branch(y, y, x)}}));
}

TemporalLottery build_iid_scaled(double pi, double c0, double x, double y) {
  check_unit(pi, "pi");
  check_xy(x, y);
  const double xs = x * (1 - pi), ys = y * (1 - pi);
  auto mid = [&](double first) {
    return node(first, {{0.5, leaf(xs)}, {0.5, leaf(ys)}});
  };
  return validate_and_canonicalize(node(c0, {{0.5, mid(xs)}, {0.5, mid(ys)}}));
}

TemporalLottery build_gradual(double eps, double c0, double k, double x,
                              double y) {
  check_unit(eps, "eps");
  check_xy(x, y);
  if (!(k >= 0)) throw ParamOutOfRange("k must be nonnegative");
  auto branch = [&](double hi, double lo) {
    if (eps == 1.0) return node(k, {{1.0, leaf(hi)}});
    return node(k, {{0.5 + eps / 2, leaf(hi)}, {0.5 - eps / 2, leaf(lo)}});
  };
  return validate_and_canonicalize(
      node(c0, {{0.5, branch(x, y)}, {0.5, branch(y, x)}}));
}

TemporalLottery build_early(double pi, double c0, double k, double x,
                            double y) {
  check_unit(pi, "pi");
  check_xy(x, y);
  if (!(k >= 0)) throw ParamOutOfRange("k must be nonnegative");
  const double s = 1 - pi;
  return validate_and_canonicalize(
      node(c0, {{0.5, node(k * s, {{1.0, leaf(x * s)}})},
                {0.5, node(k * s, {{1.0, leaf(y * s)}})}}));
}

TemporalLottery build_neg_corr(double c0, double x, double y) {
  check_xy(x, y);
  return validate_and_canonicalize(node(c0, {{0.5, node(x, {{1.0, leaf(y)}})},
                                             {0.5, node(y, {{1.0, leaf(x)}})}}));
}

TemporalLottery lottery_from_json(const nlohmann::json& j) {
  std::function<TemporalLottery(const nlohmann::json&)> parse =
      [&](const nlohmann::json& n) {
        if (!n.is_object() || !n.contains("c"))
          throw NonStochastic("lottery node must be an object with key 'c'");
        TemporalLottery d;
        d.consumption = n.at("c").get<double>();
        if (n.contains("next")) {
          for (const auto& br : n.at("next")) {
            d.branches.emplace_back(br.at("p").get<double>(),
                                    parse(br.at("node")));
          }
        }
        return d;
      };
  return validate_and_canonicalize(parse(j));
}

nlohmann::json lottery_to_json(const TemporalLottery& d) {
  nlohmann::json j;
  j["c"] = d.consumption;
  if (!d.is_leaf()) {
    nlohmann::json next = nlohmann::json::array();
    for (const auto& [p, child] : d.branches) {
      next.push_back({{"p", p}, {"node", lottery_to_json(child)}});
    }
    j["next"] = std::move(next);
  }
  return j;
}

TemporalLottery load_lottery_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  nlohmann::json j;
  in >> j;
  return lottery_from_json(j);
}

}  // namespace corrpref
