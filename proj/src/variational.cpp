#include "corrpref/variational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "corrpref/errors.hpp"

namespace corrpref {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_distribution(const std::vector<double>& p, const char* name) {
  double sum = 0;
  for (double v : p) {
    if (v < 0) throw NonStochastic(std::string(name) + " has a negative mass");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw NonStochastic(std::string(name) + " sums to " + std::to_string(sum));
}

}  // namespace

DiscreteDistortion DiscreteDistortion::make(std::vector<double> base,
                                            std::vector<double> alt) {
  if (base.size() != alt.size())
    throw DimensionMismatch("base and alt sizes differ");
  check_distribution(base, "base");
  check_distribution(alt, "alt");
  DiscreteDistortion dd;
  dd.likelihood_ratio.resize(base.size());
  for (size_t i = 0; i < base.size(); ++i) {
    if (base[i] > 0)
      dd.likelihood_ratio[i] = alt[i] / base[i];
    else
      dd.likelihood_ratio[i] = alt[i] > 0 ? kInf : 0.0;
  }
  dd.base = std::move(base);
  dd.alt = std::move(alt);
  return dd;
}

double cost_relative_entropy(const DiscreteDistortion& dd, double theta) {
  if (!(theta > 0)) throw ParamOutOfRange("theta must be positive");
  double kl = 0;
  for (size_t i = 0; i < dd.base.size(); ++i) {
    if (dd.alt[i] == 0) continue;  // 0 log 0 = 0
    if (dd.base[i] == 0) return kInf;
    kl += dd.alt[i] * std::log(dd.alt[i] / dd.base[i]);
  }
  return theta * std::max(kl, 0.0);
}

double cost_ez_renyi(const DiscreteDistortion& dd,
                     const std::vector<double>& continuation_values,
                     double alpha, double rho) {
  if (continuation_values.size() != dd.base.size())
    throw DimensionMismatch("continuation values size mismatch");
  const double q = alpha / (alpha - rho);
  if (std::fabs(q) < 1e-12 || std::fabs(q - 1) < 1e-12)
    throw DegenerateQ("Renyi order q in {0,1}");
  double ev = 0;
  for (size_t i = 0; i < dd.alt.size(); ++i)
    ev += dd.alt[i] * continuation_values[i];
  double moment = 0;
  for (size_t i = 0; i < dd.base.size(); ++i) {
    if (dd.base[i] == 0) {
      if (dd.alt[i] > 0) return kInf;
      continue;
    }
    moment += dd.base[i] * std::pow(dd.likelihood_ratio[i], q);
  }
  const double renyi = std::log(moment) / (q - 1);
  return ev * (std::exp((1 - q) / q * renyi) - 1.0);
}

namespace {

// Minimizes objective(l) over the simplex supported on {i : base_i > 0} via
// softmax reparameterization, numeric gradients, and backtracking descent.
VariationalResult minimize_simplex(
    const std::vector<double>& base,
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& node_values) {
  std::vector<int> active;
  for (size_t i = 0; i < base.size(); ++i)
    if (base[i] > 0) active.push_back(static_cast<int>(i));
  const int n = static_cast<int>(active.size());

  auto expand = [&](const std::vector<double>& z) {
    double mx = *std::max_element(z.begin(), z.end());
    std::vector<double> l(base.size(), 0.0);
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += std::exp(z[i] - mx);
    for (int i = 0; i < n; ++i) l[active[i]] = std::exp(z[i] - mx) / sum;
    return l;
  };
  auto eval = [&](const std::vector<double>& z) { return objective(expand(z)); };

  std::mt19937 rng(20240811u);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double best_val = kInf;
  std::vector<double> best_l;
  for (int restart = 0; restart < 22; ++restart) {
    std::vector<double> z(n, 0.0);
    if (restart == 0) {
      for (int i = 0; i < n; ++i) z[i] = std::log(base[active[i]]);
    } else if (restart == 1) {
      // tilt against high continuation values (the pessimistic direction)
      double scale = 0;
      for (int i = 0; i < n; ++i)
        scale = std::max(scale, std::fabs(node_values[active[i]]));
      for (int i = 0; i < n; ++i)
        z[i] = std::log(base[active[i]]) -
               (scale > 0 ? node_values[active[i]] / scale : 0.0);
    } else {
      for (int i = 0; i < n; ++i) z[i] = gauss(rng);
    }

    double cur = eval(z);
    if (!std::isfinite(cur)) continue;
    double step = 1.0;
    for (int iter = 0; iter < 4000; ++iter) {
      // central-difference gradient in the softmax parameters
      std::vector<double> grad(n);
      double gnorm = 0;
      const double h = 1e-6;
      for (int i = 0; i < n; ++i) {
        std::vector<double> zp = z, zm = z;
        zp[i] += h;
        zm[i] -= h;
        grad[i] = (eval(zp) - eval(zm)) / (2 * h);
        gnorm += grad[i] * grad[i];
      }
      gnorm = std::sqrt(gnorm);
      if (gnorm < 1e-12) break;

      bool moved = false;
      for (; step > 1e-16; step *= 0.5) {
        std::vector<double> zn = z;
        for (int i = 0; i < n; ++i) zn[i] -= step * grad[i];
        const double trial = eval(zn);
        if (std::isfinite(trial) && trial < cur - 1e-15) {
          z = std::move(zn);
          const double gain = cur - trial;
          cur = trial;
          moved = true;
          step = std::min(step * 4.0, 1e6);
          if (gain < 1e-13) iter = 4000;  // converged within tolerance
          break;
        }
      }
      if (!moved) break;
    }
    if (cur < best_val) {
      best_val = cur;
      best_l = expand(z);
    }
  }
  if (!std::isfinite(best_val))
    throw NonConvergence("simplex minimization failed on every restart");
  return {best_val, std::move(best_l)};
}

}  // namespace

VariationalResult variational_value(const KPModel& model,
                                    const std::vector<double>& node_values,
                                    const std::vector<double>& base) {
  if (node_values.size() != base.size())
    throw DimensionMismatch("values/base size mismatch");
  check_distribution(base, "base");

  if (model.phi.family == PhiFamily::Identity) {
    double ev = 0;
    for (size_t i = 0; i < base.size(); ++i) ev += base[i] * node_values[i];
    return {ev, base};
  }

  std::function<double(const std::vector<double>&)> objective;
  if (model.phi.family == PhiFamily::Exponential) {
    const double theta = model.phi.theta;
    objective = [&, theta](const std::vector<double>& l) {
      auto dd = DiscreteDistortion::make(base, l);
      double ev = 0;
      for (size_t i = 0; i < l.size(); ++i) ev += l[i] * node_values[i];
      return ev + cost_relative_entropy(dd, theta);
    };
  } else if (model.phi.family == PhiFamily::EZPower) {
    const double alpha = model.phi.alpha, rho = model.phi.rho;
    objective = [&, alpha, rho](const std::vector<double>& l) {
      auto dd = DiscreteDistortion::make(base, l);
      double ev = 0;
      for (size_t i = 0; i < l.size(); ++i) ev += l[i] * node_values[i];
      return ev + cost_ez_renyi(dd, node_values, alpha, rho);
    };
  } else {
    throw ParamOutOfRange(
        "variational representation implemented for Identity, Exponential, "
        "and EZPower adjustments");
  }
  return minimize_simplex(base, objective, node_values);
}

namespace {

double gap_walk(const KPModel& model, const TemporalLottery& d, double& worst) {
  if (d.is_leaf()) return model.u(d.consumption);
  std::vector<double> values, probs;
  values.reserve(d.branches.size());
  probs.reserve(d.branches.size());
  for (const auto& [p, child] : d.branches) {
    probs.push_back(p);
    values.push_back(gap_walk(model, child, worst));
  }
  double ephi = 0;
  for (size_t i = 0; i < values.size(); ++i)
    ephi += probs[i] * phi_eval(model.phi, values[i]);
  const double recursive_ce = phi_inverse(model.phi, ephi);
  const double variational_ce =
      variational_value(model, values, probs).value;
  worst = std::max(worst, std::fabs(recursive_ce - variational_ce));
  return model.u(d.consumption) + model.beta * recursive_ce;
}

}  // namespace

double duality_gap(const KPModel& model, const TemporalLottery& d) {
  double worst = 0;
  gap_walk(model, d, worst);
  return worst;
}

}  // namespace corrpref
