#pragma once

#include <array>
#include <utility>
#include <vector>

namespace corrpref {

// Human-capital taxation model parameters. `ability_persistence` is the
// autocorrelation of the ability shock (renamed from its usual symbol to
// avoid clashing with the risk adjustment); labor_elasticity is 1/(eta-1).
struct TaxParams {
  double beta = 0.2939;
  double gamma = -9.0;
  double labor_elasticity = 0.2;   // 1/(eta-1)
  double ability_persistence = 0.6;
  double lambda_ = 0.625;
  double mu_labor = 0.375;
  double rho_inv = 0.25 / 0.625;   // investment elasticity
  double alpha_h = 0.35;           // human-capital exponent
  double k_scale = 1.0;
  double omega = 1.0;

  double eta() const { return 1.0 + 1.0 / labor_elasticity; }
};

// Steady-state welfare at progressivity tau, as the sum of seven summands.
std::array<double, 7> steady_welfare_terms(const TaxParams& p, double tau);
double steady_welfare(const TaxParams& p, double tau);

// Independent re-transcription of the same display; tests pin agreement with
// steady_welfare to 1e-9.
double steady_welfare_check(const TaxParams& p, double tau);

struct TaxOptimum {
  double tau_star = 0;
  double welfare = 0;
  std::vector<std::pair<double, double>> curve;  // (tau, welfare) samples
};

// 1000-point grid on [0, 0.999] then golden-section refinement to 1e-6.
TaxOptimum optimize_tau(const TaxParams& p);

}  // namespace corrpref
