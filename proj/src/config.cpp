#include "corrpref/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "corrpref/errors.hpp"

namespace corrpref {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double want_num(const KvMap& kv, const std::string& key, double fallback,
                bool* present = nullptr) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (present) *present = false;
    return fallback;
  }
  if (present) *present = true;
  size_t used = 0;
  double v = std::stod(it->second, &used);
  if (used != it->second.size())
    throw ParamOutOfRange("malformed number for key '" + key + "'");
  return v;
}

void reject_unknown(const KvMap& kv, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : kv) {
    if (!allowed.count(k))
      throw ParamOutOfRange("unknown config key '" + k + "'");
  }
}

}  // namespace

KvMap parse_kv_text(const std::string& text) {
  KvMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParamOutOfRange("config line " + std::to_string(lineno) +
                            " is not key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

KvMap parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

KPModel model_from_config(const KvMap& kv) {
  reject_unknown(kv, {"family", "alpha", "rho", "theta", "gamma", "b", "beta",
                      "felicity", "u_rho", "u_s"});
  KPModel m;
  const std::string family =
      kv.count("family") ? kv.at("family") : "identity";
  if (family == "identity") {
    m.phi = RiskAdjustment::identity();
  } else if (family == "ez") {
    m.phi = RiskAdjustment::ez_power(want_num(kv, "alpha", -1.0),
                                     want_num(kv, "rho", 0.5));
  } else if (family == "exponential") {
    m.phi = RiskAdjustment::exponential(want_num(kv, "theta", 1.0));
  } else if (family == "hara") {
    m.phi = RiskAdjustment::hara(want_num(kv, "gamma", -1.0),
                                 want_num(kv, "b", 0.0));
  } else {
    throw ParamOutOfRange("unknown family '" + family + "'");
  }
  m.beta = want_num(kv, "beta", 1.0);
  const std::string fel =
      kv.count("felicity") ? kv.at("felicity") : "linear";
  if (fel == "linear") {
    m.u = Felicity::linear();
  } else if (fel == "log") {
    m.u = Felicity::log_u();
  } else if (fel == "power") {
    m.u = Felicity::power(want_num(kv, "u_rho", 1.0));
  } else if (fel == "scaled_power") {
    m.u = Felicity::scaled_power(want_num(kv, "u_s", 1.0),
                                 want_num(kv, "u_rho", 1.0));
  } else {
    throw ParamOutOfRange("unknown felicity '" + fel + "'");
  }
  return m;
}

LrrParams lrr_from_config(const KvMap& kv) {
  reject_unknown(kv, {"sigma", "vol_loading", "a", "beta", "alpha", "rho",
                      "x0", "drift", "log_c0"});
  LrrParams p;
  p.sigma = want_num(kv, "sigma", p.sigma);
  p.vol_loading = want_num(kv, "vol_loading", p.vol_loading);
  p.a = want_num(kv, "a", p.a);
  p.beta = want_num(kv, "beta", p.beta);
  p.alpha = want_num(kv, "alpha", p.alpha);
  p.rho = want_num(kv, "rho", p.rho);
  p.x0 = want_num(kv, "x0", p.x0);
  p.drift = want_num(kv, "drift", p.drift);
  p.log_c0 = want_num(kv, "log_c0", p.log_c0);
  return p;
}

TaxParams tax_from_config(const KvMap& kv) {
  reject_unknown(kv, {"beta", "gamma", "labor_elasticity",
                      "ability_persistence", "lambda", "mu_labor", "rho_inv",
                      "alpha_h", "k_scale", "omega"});
  TaxParams p;
  p.beta = want_num(kv, "beta", p.beta);
  p.gamma = want_num(kv, "gamma", p.gamma);
  p.labor_elasticity = want_num(kv, "labor_elasticity", p.labor_elasticity);
  p.ability_persistence =
      want_num(kv, "ability_persistence", p.ability_persistence);
  p.lambda_ = want_num(kv, "lambda", p.lambda_);
  p.mu_labor = want_num(kv, "mu_labor", p.mu_labor);
  p.rho_inv = want_num(kv, "rho_inv", p.rho_inv);
  p.alpha_h = want_num(kv, "alpha_h", p.alpha_h);
  p.k_scale = want_num(kv, "k_scale", p.k_scale);
  p.omega = want_num(kv, "omega", p.omega);
  return p;
}

}  // namespace corrpref
