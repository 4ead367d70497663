#pragma once

#include <map>
#include <string>

#include "corrpref/longrun.hpp"
#include "corrpref/risk.hpp"
#include "corrpref/taxation.hpp"

namespace corrpref {

using KvMap = std::map<std::string, std::string>;

// Flat key=value files; '#' starts a comment, blank lines ignored.
KvMap parse_kv_file(const std::string& path);
KvMap parse_kv_text(const std::string& text);

// Keys: family=identity|ez|exponential|hara|, plus family parameters
// (alpha, rho, theta, gamma, b), beta, felicity=linear|log|power|scaled_power
// with u_rho / u_s. Unknown keys are rejected.
KPModel model_from_config(const KvMap& kv);

// Keys: sigma, vol_loading, a, beta, alpha, rho, x0, drift, log_c0.
LrrParams lrr_from_config(const KvMap& kv);

// Keys: beta, gamma, labor_elasticity, ability_persistence, lambda, mu_labor,
// rho_inv, alpha_h, k_scale, omega.
TaxParams tax_from_config(const KvMap& kv);

}  // namespace corrpref
