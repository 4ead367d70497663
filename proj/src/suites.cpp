#include "corrpref/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "corrpref/errors.hpp"

namespace corrpref {

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

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

Felicity random_felicity(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) return Felicity::linear();
  std::uniform_real_distribution<double> r(0.3, 0.99);
  return Felicity::power(r(rng));
}

std::string describe(const char* what, std::uint64_t seed, int idx) {
  std::ostringstream os;
  os << what << " case " << idx << " (seed " << seed << ")";
  return os.str();
}

}  // namespace

SuiteReport theorem1_forward(const RiskAdjustment& phi, int n,
                             std::uint64_t seed) {
  SuiteReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> ksize(2, 4);
  std::uniform_int_distribution<int> clen(1, 5);

  for (int case_i = 0; case_i < n; ++case_i) {
    // random support and marginal
    const int k = ksize(rng);
    std::vector<double> support;
    while (static_cast<int>(support.size()) < k) {
      double c = log_uniform(rng, 0.1, 20.0);
      bool dup = false;
      for (double s : support) dup = dup || std::fabs(s - c) < 1e-6;
      if (!dup) support.push_back(c);
    }
    std::sort(support.begin(), support.end());
    std::vector<double> probs(k);
    double sum = 0;
    for (double& p : probs) {
      p = 0.05 + unit(rng);
      sum += p;
    }
    for (double& p : probs) p /= sum;

    Distribution l;
    ConditionalForm cf;
    for (int i = 0; i < k; ++i) {
      l.emplace_back(support[i], probs[i]);
      cf.m1[support[i]] = probs[i];
      for (int j = 0; j < k; ++j) cf.m2[support[i]][support[j]] = probs[j];
    }

    KPModel model{phi, random_felicity(rng),
                  0.2 + 0.8 * unit(rng)};
    const double v_iid = kp_evaluate(model, from_conditional_form(cf, 1.0));
    double prev = v_iid;

    const int steps = clen(rng);
    for (int s = 0; s < steps; ++s) {
      std::uniform_int_distribution<int> pick(0, k - 1);
      int a = pick(rng), b = pick(rng);
      if (a == b) b = (b + 1) % k;
      const double ca = support[a], cb = support[b];
      const double emax = std::min(
          {cf.m2[ca][cb] * cf.m1[ca], cf.m2[cb][ca] * cf.m1[cb],
           (1 - cf.m2[ca][ca]) * cf.m1[ca], (1 - cf.m2[cb][cb]) * cf.m1[cb]});
      if (emax <= 0) continue;
      cf = apply_iecit(cf, {ca, cb, 0.9 * emax * unit(rng)});
      const double v = kp_evaluate(model, from_conditional_form(cf, 1.0));
      // Every chain prefix must be weakly dispreferred to the iid base. The
      // step-by-step comparison between two non-iid prefixes is only
      // guaranteed on two-point supports: with three or more consumption
      // levels the information gain of an elementary correlation increase
      // can locally outweigh the hedging loss, so only the anchored
      // comparison is asserted in general.
      if (v > v_iid + 1e-9) {
        rep.violations.push_back(
            {describe("theorem1_forward anchored", seed, case_i), v, v_iid});
      }
      if (k == 2 && v > prev + 1e-9) {
        rep.violations.push_back(
            {describe("theorem1_forward pairwise", seed, case_i), v, prev});
      }
      prev = v;
    }
    ++rep.cases_run;
  }
  return rep;
}

SuiteReport theorem1_converse(const RiskAdjustment& phi) {
  Classification cls = classify(phi, 1.0);
  if (cls.irra || !cls.decreasing_R)
    throw NoWitness("adjustment is IRRA; no decreasing-R interval");
  const auto [z, zbar] = *cls.decreasing_R;

  // beta small enough that x = zbar/(1+beta) stays above y = z.
  double beta = std::min(0.95, 0.5 * (zbar / z - 1.0));
  while (zbar / (1 + beta) <= z * (1 + 1e-9)) beta *= 0.5;
  const double x = zbar / (1 + beta), y = z;

  KPModel model{phi, Felicity::linear(), beta};
  SuiteReport rep;
  std::ostringstream os;
  os << "x=" << x << " y=" << y << " beta=" << beta;
  const double v_full = kp_evaluate(model, build_corr(1.0, 1.0, x, y));
  bool found = false;
  for (int i = 0; i < 20 && !found; ++i) {
    const double eps = i * 0.05;
    ++rep.cases_run;
    const double v = kp_evaluate(model, build_corr(eps, 1.0, x, y));
    if (v_full > v + 1e-9) {
      found = true;
      os << " violating eps=" << eps << " V(d^1)-V(d^eps)=" << v_full - v;
    }
  }
  rep.detail = os.str();
  if (!found)
    rep.violations.push_back(
        {"theorem1_converse: no strict violation located", v_full, v_full});
  return rep;
}

SuiteReport prop1_suite(const RiskAdjustment& phi, double beta, int n,
                        std::uint64_t seed) {
  SuiteReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.1, 0.9);

  for (int case_i = 0; case_i < n; ++case_i) {
    const double c0 = log_uniform(rng, 0.1, 20.0);
    const double c1 = log_uniform(rng, 0.1, 20.0);
    double x = log_uniform(rng, 0.1, 20.0);
    double y = log_uniform(rng, 0.1, 20.0);
    if (x < y) std::swap(x, y);
    if (x - y < 1e-6) continue;
    const double p = unit(rng);
    KPModel model{phi, random_felicity(rng), beta};

    const TemporalLottery early = validate_and_canonicalize(
        node(c0, {{p, node(c1, {{1.0, leaf(x)}})},
                  {1 - p, node(c1, {{1.0, leaf(y)}})}}));
    const TemporalLottery late = validate_and_canonicalize(
        node(c0, {{1.0, node(c1, {{p, leaf(x)}, {1 - p, leaf(y)}})}}));
    const double ve = kp_evaluate(model, early);
    const double vl = kp_evaluate(model, late);

    // pointwise ER verdict over the spanned utility interval
    const double ux = model.u(x), uy = model.u(y), uc = model.u(c1);
    bool all_nonneg = true, all_nonpos = true;
    for (int i = 0; i <= 20; ++i) {
      const double zpt = uy + (ux - uy) * i / 20.0;
      const double er = er_measure(model, zpt, uc);
      all_nonneg = all_nonneg && er >= -1e-12;
      all_nonpos = all_nonpos && er <= 1e-12;
    }
    ++rep.cases_run;
    if (all_nonneg && ve < vl - 1e-9)
      rep.violations.push_back({describe("prop1 early>=late", seed, case_i),
                                ve, vl});
    else if (all_nonpos && !all_nonneg && ve > vl + 1e-9)
      rep.violations.push_back({describe("prop1 early<=late", seed, case_i),
                                ve, vl});
  }
  return rep;
}

}  // namespace corrpref
