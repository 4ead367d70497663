#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "corrpref/lottery.hpp"

namespace corrpref {

enum class PhiFamily { Identity, EZPower, Exponential, HARA, Custom };

// Risk adjustment phi: strictly increasing transform applied to continuation
// utility. Closed families carry their parameters; Custom carries a callable
// returning the order-th derivative and is classified by grid only.
struct RiskAdjustment {
  PhiFamily family = PhiFamily::Identity;
  double alpha = 0, rho = 1;  // EZPower
  double theta = 1;           // Exponential
  double gamma = 0, b = 0;    // HARA
  double dom_lo = -std::numeric_limits<double>::infinity();
  double dom_hi = std::numeric_limits<double>::infinity();
  std::function<double(double, int)> custom;  // (x, order) -> d^order phi
  std::string label;

  static RiskAdjustment identity();
  static RiskAdjustment ez_power(double alpha, double rho);
  static RiskAdjustment exponential(double theta);
  static RiskAdjustment hara(double gamma, double b);
  static RiskAdjustment custom_phi(std::function<double(double, int)> f,
                                   double lo, double hi, std::string label);
};

double phi_eval(const RiskAdjustment& phi, double x, int order = 0);
double phi_inverse(const RiskAdjustment& phi, double y);

struct ArrowPrattReport {
  double A;        // absolute risk aversion -phi''/phi'
  double R;        // relative risk aversion x*A
  double Aprime;
  double Rprime;
  double Rsecond;  // NaN if order-4 derivative unavailable
};
ArrowPrattReport arrow_pratt(const RiskAdjustment& phi, double x);

enum class UFamily { Linear, Power, Log, ScaledPower };

// Felicity u. Power(rho) is u(c) = c^rho / rho; ScaledPower(s, rho) is
// u(c) = s * c^rho (so 3*c^(1/3) is either ScaledPower(3, 1/3) or Power(1/3)).
struct Felicity {
  UFamily family = UFamily::Linear;
  double s = 1, rho = 1;

  static Felicity linear() { return {UFamily::Linear, 1, 1}; }
  static Felicity log_u() { return {UFamily::Log, 1, 1}; }
  static Felicity power(double rho);
  static Felicity scaled_power(double s, double rho);

  double operator()(double c) const;
  double inverse(double u) const;
};

struct KPModel {
  RiskAdjustment phi;
  Felicity u;
  double beta = 1;
};

// ER_phi(x, y) = -phi''(x)/phi'(x) + beta*phi''(beta x + y)/phi'(beta x + y).
double er_measure(const KPModel& model, double x, double y);

struct GridSpec {
  double lo = 0.05, hi = 50.0;
  int points = 200;  // log-spaced per axis
};

struct Classification {
  bool dara = false, irra = false, sca = false, upi = false, concave = false;
  bool grid_verified = false;  // true when decided by grid only (Custom)
  // first grid point violating the preference-for-information inequality
  std::optional<std::pair<double, double>> upi_violation;
  // witnessed interval [z_lo, z_hi] with R(z_hi) < R(z_lo), when not IRRA
  std::optional<std::pair<double, double>> decreasing_R;
};

Classification classify(const RiskAdjustment& phi, double beta,
                        const GridSpec& grid = {});

// V_0 by backward recursion: V_T = u(c), V_t = u(c) + beta*phi^{-1}(E phi V).
double kp_evaluate(const KPModel& model, const TemporalLottery& d);
double present_equivalent(const KPModel& model, const TemporalLottery& d);

enum class HedgingVerdict { prefers_negative, prefers_positive, indifferent };
// Perfect positive vs perfect negative correlation at utility levels x, y.
HedgingVerdict hedging_compare(const KPModel& model, double x, double y);

// CAA(phi)(x) = int_0^x exp(-int_0^t R'(s)/s ds) dt, inner integral
// normalized at reference point 1 (the representative the closed forms use).
double caa_transform(const RiskAdjustment& phi, double x);
// The transformed adjustment as a Custom family with analytic derivatives
// (chain rule through the integral representation), so CAA can be iterated.
RiskAdjustment caa_of(const RiskAdjustment& phi);

}  // namespace corrpref
