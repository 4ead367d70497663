#include "corrpref/taxation.hpp"

#include <cmath>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"

namespace corrpref {

namespace {

double checked_log(double x, const char* what) {
  if (!(x > 0))
    throw DomainViolation(std::string(what) + " must be positive, got " +
                          std::to_string(x));
  return std::log(x);
}

}  // namespace

std::array<double, 7> steady_welfare_terms(const TaxParams& p, double tau) {
  if (!(tau >= 0 && tau < 1)) throw ParamOutOfRange("tau must lie in [0,1)");
  const double beta = p.beta, alpha = p.alpha_h, lam = p.lambda_;
  const double rho = p.rho_inv, gamma = p.gamma, omega = p.omega;
  const double phi = p.ability_persistence;
  const double mu_eta = p.mu_labor / p.eta();

  const double one_ba = 1 - beta * alpha;
  const double one_barl = 1 - beta * (alpha + rho * lam);
  const double one_barl_tau = 1 - beta * (alpha + rho * lam * (1 - tau));
  const double one_arl_tau = 1 - alpha - rho * lam + rho * lam * tau;
  const double one_phi2 = 1 - phi * phi;
  if (!(one_barl > 0) || !(one_barl_tau > 0) || !(one_arl_tau > 0))
    throw DomainViolation("discounted human-capital denominator nonpositive");

  const double log_1tau = checked_log(1 - tau, "1 - tau");
  const double log_rbl = checked_log(rho * beta * lam, "rho*beta*lambda");
  const double log_1ba = checked_log(one_ba, "1 - beta*alpha");
  const double log_mu = checked_log(mu_eta, "mu/eta");
  const double log_1barl_tau =
      checked_log(one_barl_tau, "1 - beta(alpha + rho*lambda(1-tau))");

  const double risk_quad = tau * (2 - tau) * lam * lam * omega * omega /
                           (2 * one_phi2 * one_arl_tau * one_arl_tau);
  const double labor_block =
      mu_eta * log_mu + mu_eta * log_1ba - mu_eta * log_1barl_tau;

  std::array<double, 7> t{};
  t[0] = (1 - beta) * lam * rho / (one_barl * (1 - alpha - rho * lam)) *
         (log_1tau + log_rbl - log_1ba + labor_block + risk_quad);
  t[1] = one_ba / one_barl * labor_block;
  t[2] = -mu_eta * one_ba / one_barl_tau;
  t[3] = lam * beta / one_barl *
         (checked_log(p.k_scale, "k") + rho * log_1tau + rho * log_rbl -
          rho * log_1ba);
  t[4] = checked_log(1 - (1 - tau) * rho * beta * lam / one_ba,
                     "1 - (1-tau)rho*beta*lambda/(1-beta*alpha)");
  t[5] = gamma * beta * lam * lam * (1 - beta) * (1 - tau) * (1 - tau) *
         omega * omega /
         (2 * one_phi2 *
          (1 - beta * alpha - beta * rho * lam + beta * rho * lam * tau) *
          (1 - beta * alpha - beta * rho * lam + beta * rho * lam * tau));
  t[6] = one_ba / one_barl * risk_quad;
  return t;
}

double steady_welfare(const TaxParams& p, double tau) {
  const auto t = steady_welfare_terms(p, tau);
  double s = 0;
  for (double v : t) s += v;
  return s;
}

// Written independently from the display, without sharing subexpressions with
// steady_welfare_terms; the pair guards against transcription slips.
double steady_welfare_check(const TaxParams& p, double tau) {
  if (!(tau >= 0 && tau < 1)) throw ParamOutOfRange("tau must lie in [0,1)");
  const double b = p.beta, a = p.alpha_h, l = p.lambda_, r = p.rho_inv;
  const double g = p.gamma, w = p.omega, f = p.ability_persistence;
  const double me = p.mu_labor / (1.0 + 1.0 / p.labor_elasticity);

  auto L = [](double x) {
    if (!(x > 0)) throw DomainViolation("log of nonpositive expression");
    return std::log(x);
  };

  const double A = 1 - b * a;
  const double B = 1 - b * a - b * r * l;
  const double C = 1 - b * a - b * r * l * (1 - tau);
  const double D = 1 - a - r * l * (1 - tau);
  const double Q =
      tau * (2 - tau) * l * l * w * w / (2 * (1 - f * f) * D * D);
  const double H = me * (L(me) + L(A) - L(C));

  double out = 0;
  out += (1 - b) * l * r / (B * (1 - a - r * l)) *
         (L(1 - tau) + L(r * b * l) - L(A) + H + Q);
  out += A / B * H;
  out -= me * A / C;
  out += l * b / B * (L(p.k_scale) + r * (L(1 - tau) + L(r * b * l) - L(A)));
  out += L(1 - (1 - tau) * r * b * l / A);
  out += g * b * l * l * (1 - b) * (1 - tau) * (1 - tau) * w * w /
         (2 * (1 - f * f) * C * C);
  out += A / B * Q;
  return out;
}

TaxOptimum optimize_tau(const TaxParams& p) {
  TaxOptimum out;
  const int n = 1000;
  const double hi = 0.999;
  out.curve.reserve(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    const double tau = hi * i / (n - 1);
    const double w = steady_welfare(p, tau);
    out.curve.emplace_back(tau, w);
    if (w > out.curve[best].second) best = i;
  }
  const double lo_t = out.curve[std::max(best - 1, 0)].first;
  const double hi_t = out.curve[std::min(best + 1, n - 1)].first;
  out.tau_star = num::golden_section_min(
      [&](double tau) { return -steady_welfare(p, tau); }, lo_t, hi_t, 1e-6);
  out.welfare = steady_welfare(p, out.tau_star);
  return out;
}

}  // namespace corrpref
