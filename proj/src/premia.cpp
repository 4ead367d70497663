#include "corrpref/premia.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "corrpref/errors.hpp"
#include "corrpref/numerics.hpp"

namespace corrpref {

namespace {

constexpr double kPiTol = 1e-10;

// Solves eval(pi) = target for pi in [0,1], with eval strictly decreasing.
// The upper endpoint shrinks away from 1 when the model cannot evaluate zero
// consumption (log felicity, EZ with negative alpha).
double solve_decreasing(const std::function<double(double)>& eval,
                        double target) {
  const double scale = std::max(1.0, std::fabs(target));
  double h0 = eval(0.0) - target;
  if (std::fabs(h0) <= 1e-13 * scale) return 0.0;
  if (h0 < 0)
    throw NoRoot("target above the value of the uncorrelated lottery");

  double hi = 1.0;
  double hhi = std::numeric_limits<double>::quiet_NaN();
  for (double cand : {1.0, 1.0 - 1e-9, 1.0 - 1e-6, 1.0 - 1e-3}) {
    try {
      double v = eval(cand) - target;
      if (std::isfinite(v)) {
        hi = cand;
        hhi = v;
        break;
      }
    } catch (const Error&) {
      // endpoint outside the felicity/adjustment domain; shrink
    }
  }
  if (!std::isfinite(hhi)) throw NoRoot("no evaluable upper bracket endpoint");
  if (std::fabs(hhi) <= 1e-13 * scale) return hi;
  if (hhi > 0) throw NoRoot("target below the range of pi -> V(d^iid(pi))");
  return num::bisect([&](double pi) { return eval(pi) - target; }, 0.0, hi,
                     kPiTol);
}

}  // namespace

PremiumReport persistence_premium(const KPModel& model, double c0, double x,
                                  double y, double eps) {
  if (!(x > y && y > 0)) throw ParamOutOfRange("need x > y > 0");
  const double target = kp_evaluate(model, build_corr(eps, c0, x, y));
  PremiumReport rep;
  rep.epsilon = eps;
  rep.exact_pi = solve_decreasing(
      [&](double pi) {
        return kp_evaluate(model, build_iid_scaled(pi, c0, x, y));
      },
      target);
  return rep;
}

namespace {

// E phi(V1) of d^corr(eps) with identity felicity (the Corollary 1 setting).
double f_corr(const KPModel& m, double x, double y, double eps) {
  const double p = 0.5 + eps / 2, q = 0.5 - eps / 2;
  const double px = phi_eval(m.phi, x), py = phi_eval(m.phi, y);
  const double a = phi_inverse(m.phi, p * px + q * py);
  const double b = phi_inverse(m.phi, q * px + p * py);
  return 0.5 * phi_eval(m.phi, x + m.beta * a) +
         0.5 * phi_eval(m.phi, y + m.beta * b);
}

// E phi(V1) of d^iid(pi), same setting.
double g_iid(const KPModel& m, double x, double y, double pi) {
  const double xs = x * (1 - pi), ys = y * (1 - pi);
  const double c = phi_inverse(
      m.phi, 0.5 * phi_eval(m.phi, xs) + 0.5 * phi_eval(m.phi, ys));
  return 0.5 * phi_eval(m.phi, xs + m.beta * c) +
         0.5 * phi_eval(m.phi, ys + m.beta * c);
}

}  // namespace

PremiumReport persistence_premium_approx(const KPModel& model, double c0,
                                         double x, double y, double eps) {
  if (!(x > y && y > 0)) throw ParamOutOfRange("need x > y > 0");
  PremiumReport rep = persistence_premium(model, c0, x, y, eps);

  const RiskAdjustment& phi = model.phi;
  const double beta = model.beta;
  const double phix = phi_eval(phi, x), phiy = phi_eval(phi, y);

  // Anchor of the expansion: the exact premium at full correlation.
  auto g = [&](double pi) { return g_iid(model, x, y, pi); };
  const double pi1 = solve_decreasing(g, f_corr(model, x, y, 1.0));

  // Slope and curvature of eps -> E phi(V1(d^corr(eps))) at eps = 1 from the
  // Taylor identity; the integrand is the relative-risk-aversion increment
  // driving correlation aversion.
  const double integral = num::integrate(
      [&](double z) {
        const double ratio =
            phi_eval(phi, z * (1 + beta), 1) / phi_eval(phi, z, 1);
        const double dR =
            arrow_pratt(phi, z * (1 + beta)).R - arrow_pratt(phi, z).R;
        return ratio * dR / z;
      },
      y, x, 1e-10);
  const double fp1 = -beta * (phix - phiy) / 4.0 * integral;
  const double fpp1 =
      beta * beta * (phix - phiy) * (phix - phiy) / 8.0 *
      (phi_eval(phi, x * (1 + beta), 1) / phi_eval(phi, x, 1) *
           er_measure(model, x, x) +
       phi_eval(phi, y * (1 + beta), 1) / phi_eval(phi, y, 1) *
           er_measure(model, y, y));

  const double gp = num::central_diff(g, pi1, 1, 1e-6);
  const double gpp = num::central_diff(g, pi1, 2, 1e-4);
  const double dpi = fp1 / gp;  // pi'(1)

  rep.level = pi1;
  rep.slope = dpi * (eps - 1.0);
  rep.curvature =
      0.5 * (fpp1 - gpp * dpi * dpi) / gp * (eps - 1.0) * (eps - 1.0);
  rep.slope_integral = integral;
  rep.approx_pi = rep.level + rep.slope + rep.curvature;
  rep.gap = rep.exact_pi - rep.approx_pi;
  return rep;
}

PremiumReport timing_premium(const KPModel& model, double c0, double k,
                             double x, double y, double eps) {
  if (!(x > y && y > 0)) throw ParamOutOfRange("need x > y > 0");
  const double target = kp_evaluate(model, build_gradual(eps, c0, k, x, y));
  PremiumReport rep;
  rep.epsilon = eps;
  rep.exact_pi = solve_decreasing(
      [&](double pi) {
        return kp_evaluate(model, build_early(pi, c0, k, x, y));
      },
      target);
  return rep;
}

double timing_premium_approx(const KPModel& model, double c0, double k,
                             double x, double y, double eps) {
  (void)c0;
  if (!(x > y && y > 0)) throw ParamOutOfRange("need x > y > 0");
  const RiskAdjustment& phi = model.phi;
  const double beta = model.beta;
  const double integral = num::integrate(
      [&](double z) {
        return phi_eval(phi, k + beta * z, 1) / phi_eval(phi, z, 1) *
               er_measure(model, z, k);
      },
      y, x, 1e-10);
  // g(pi) = 1/2 phi((k+bx)(1-pi)) + 1/2 phi((k+by)(1-pi)), chain rule at 0.
  const double gp0 =
      -0.5 * ((k + beta * x) * phi_eval(phi, k + beta * x, 1) +
              (k + beta * y) * phi_eval(phi, k + beta * y, 1));
  const double k1 =
      -beta * (phi_eval(phi, x) - phi_eval(phi, y)) / (4.0 * gp0);
  return k1 * integral * (1.0 - eps);
}

double dpos_measure(const KPModel& model, double hi, double lo) {
  if (!(hi > lo && lo > 0)) throw ParamOutOfRange("need hi > lo > 0");
  const RiskAdjustment& phi = model.phi;
  const double beta = model.beta;
  const double uh = model.u(hi), ul = model.u(lo);

  // Perfectly correlated: each branch repeats its draw.
  const double v_corr =
      beta * phi_inverse(phi, 0.5 * phi_eval(phi, (1 + beta) * uh) +
                                  0.5 * phi_eval(phi, (1 + beta) * ul));
  // iid: both branches face the same second-period mixture.
  const double ce2 =
      phi_inverse(phi, 0.5 * phi_eval(phi, uh) + 0.5 * phi_eval(phi, ul));
  const double v_iid =
      beta * phi_inverse(phi, 0.5 * phi_eval(phi, uh + beta * ce2) +
                                  0.5 * phi_eval(phi, ul + beta * ce2));
  return 1.0 - model.u.inverse(v_corr) / model.u.inverse(v_iid);
}

}  // namespace corrpref
