#include "corrpref/horizon.hpp"

#include <cmath>
#include <vector>

#include "corrpref/errors.hpp"

namespace corrpref {

namespace {

constexpr long kIterCap = 1000000;

void check_params(double rho, double beta, const Distribution& l) {
  if (!(rho > 0 && rho < 1)) throw ParamOutOfRange("rho must lie in (0,1)");
  if (!(beta > 0 && beta < 1)) throw ParamOutOfRange("beta must lie in (0,1)");
  double sum = 0;
  for (const auto& [c, p] : l) {
    if (!(c > 0)) throw ParamOutOfRange("support must be positive");
    if (!(p > 0)) throw NonStochastic("probabilities must be positive");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw NonStochastic("distribution sums to " + std::to_string(sum));
}

// CE of the per-state value vector under the continuation kernel: iid mixes
// with l every period, perfectly correlated stays put.
std::vector<double> apply_T(const RiskAdjustment& phi, double rho, double beta,
                            const StationaryLottery& sl,
                            const std::vector<double>& v) {
  const size_t n = sl.dist.size();
  std::vector<double> out(n);
  if (sl.kind == StationaryLottery::Kind::iid) {
    double ephi = 0;
    for (size_t i = 0; i < n; ++i) ephi += sl.dist[i].second * phi_eval(phi, v[i]);
    const double ce = phi_inverse(phi, ephi);
    for (size_t i = 0; i < n; ++i)
      out[i] = std::pow(std::pow(sl.dist[i].first, rho) +
                            beta * std::pow(ce, rho),
                        1.0 / rho);
  } else {
    for (size_t i = 0; i < n; ++i)
      out[i] = std::pow(std::pow(sl.dist[i].first, rho) +
                            beta * std::pow(v[i], rho),
                        1.0 / rho);
  }
  return out;
}

// Expected-utility start: the linear fixed point of W = c^rho + beta*E[W].
std::vector<double> eu_start(double rho, double beta,
                             const StationaryLottery& sl) {
  const size_t n = sl.dist.size();
  std::vector<double> v(n);
  if (sl.kind == StationaryLottery::Kind::iid) {
    double mean = 0;
    for (const auto& [c, p] : sl.dist) mean += p * std::pow(c, rho);
    const double s = mean / (1 - beta);  // E[W]
    for (size_t i = 0; i < n; ++i)
      v[i] = std::pow(std::pow(sl.dist[i].first, rho) + beta * s, 1.0 / rho);
  } else {
    for (size_t i = 0; i < n; ++i)
      v[i] = std::pow(std::pow(sl.dist[i].first, rho) / (1 - beta), 1.0 / rho);
  }
  return v;
}

double root_value(const RiskAdjustment& phi, double rho, double beta,
                  const StationaryLottery& sl, const std::vector<double>& v) {
  double ephi = 0;
  for (size_t i = 0; i < v.size(); ++i)
    ephi += sl.dist[i].second * phi_eval(phi, v[i]);
  const double ce = phi_inverse(phi, ephi);
  return std::pow(std::pow(sl.c0, rho) + beta * std::pow(ce, rho), 1.0 / rho);
}

}  // namespace

double value_iterate(const RiskAdjustment& phi, double rho, double beta,
                     const StationaryLottery& sl, double tol) {
  check_params(rho, beta, sl.dist);
  if (!(sl.c0 > 0)) throw ParamOutOfRange("c0 must be positive");

  std::vector<double> v = eu_start(rho, beta, sl);
  for (long iter = 0; iter < kIterCap; ++iter) {
    std::vector<double> next = apply_T(phi, rho, beta, sl, v);
    double sup = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      if (next[i] > v[i] + 1e-10)
        throw NonContraction("iterate increased at a support point");
      sup = std::max(sup, std::fabs(next[i] - v[i]));
    }
    v = std::move(next);
    if (sup < tol) {
      // fixed-point residual sanity check
      std::vector<double> again = apply_T(phi, rho, beta, sl, v);
      double res = 0;
      for (size_t i = 0; i < v.size(); ++i)
        res = std::max(res, std::fabs(again[i] - v[i]));
      if (res > 10 * tol)
        throw NonConvergence("fixed-point residual above 10*tol");
      return root_value(phi, rho, beta, sl, v);
    }
  }
  throw IterationCap("value iteration exceeded the iteration cap");
}

IidCorrComparison compare_iid_corr(const RiskAdjustment& phi, double rho,
                                   double beta, const Distribution& l,
                                   double c0) {
  check_params(rho, beta, l);
  IidCorrComparison out;
  StationaryLottery iid{StationaryLottery::Kind::iid, l, c0};
  out.v_iid = value_iterate(phi, rho, beta, iid);

  // Frozen draw = constant stream; CE over the initial draw only.
  double ephi = 0;
  for (const auto& [c, p] : l)
    ephi += p * phi_eval(phi, c / std::pow(1 - beta, 1.0 / rho));
  const double ce = phi_inverse(phi, ephi);
  out.v_corr =
      std::pow(std::pow(c0, rho) + beta * std::pow(ce, rho), 1.0 / rho);
  out.iid_weakly_preferred = out.v_iid >= out.v_corr - 1e-12;
  return out;
}

}  // namespace corrpref
