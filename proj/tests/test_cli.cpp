#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "corrpref/premia.hpp"
#include "corrpref/risk.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

std::string binary() {
  const char* b = std::getenv("CORRPREF_BIN");
  REQUIRE_MESSAGE(b != nullptr, "CORRPREF_BIN must point at the CLI binary");
  return b;
}

RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = binary() + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = std::fread(buf.data(), 1, buf.size(), p))
    r.output.append(buf.data(), n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/corrpref_test_" + name;
  std::ofstream os(path);
  os << text;
  return path;
}

const std::string kHsCfg =
    "family=exponential\ntheta=1\nbeta=1\nfelicity=linear\n";
const std::string kLottery =
    R"({"c":1,"next":[{"p":0.5,"node":{"c":2}},{"p":0.5,"node":{"c":1}}]})";

}  // namespace

TEST_CASE("eval matches the library call") {
  const auto cfg = write_temp("hs.cfg", kHsCfg);
  const auto lot = write_temp("lot.json", kLottery);
  const auto r = run("eval --model " + cfg + " --lottery " + lot);
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.output);

  corrpref::KPModel m{corrpref::RiskAdjustment::exponential(1.0),
                      corrpref::Felicity::linear(), 1.0};
  const auto d = corrpref::lottery_from_json(json::parse(kLottery));
  CHECK(j.at("value").get<double>() ==
        doctest::Approx(kp_evaluate(m, d)).epsilon(1e-8));
  CHECK(j.at("depth").get<int>() == 1);
}

TEST_CASE("premium persistence matches the library call") {
  const auto cfg = write_temp("hs.cfg", kHsCfg);
  const auto r =
      run("premium persistence --model " + cfg + " --x 2 --y 1 --eps 0.9");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.output);
  corrpref::KPModel m{corrpref::RiskAdjustment::exponential(1.0),
                      corrpref::Felicity::linear(), 1.0};
  const auto want = corrpref::persistence_premium_approx(m, 1, 2, 1, 0.9);
  CHECK(j.at("exact_pi").get<double>() ==
        doctest::Approx(want.exact_pi).epsilon(1e-8));
  CHECK(j.at("approx_pi").get<double>() ==
        doctest::Approx(want.approx_pi).epsilon(1e-8));
  CHECK(j.at("kind") == "persistence");
}

TEST_CASE("output is byte-identical across runs") {
  const auto a = run("reproduce table1");
  const auto b = run("reproduce table1");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK_FALSE(a.output.empty());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("premium sideways --model /dev/null --x 2 --y 1 --eps 1")
            .exit_code == 2);
  CHECK(run("premium persistence").exit_code == 2);  // missing required opts
}

TEST_CASE("computation errors exit 1 with a diagnostic") {
  const auto cfg = write_temp("hs.cfg", kHsCfg);
  const auto ragged = write_temp(
      "ragged.json",
      R"({"c":1,"next":[{"p":0.5,"node":{"c":2}},
          {"p":0.5,"node":{"c":1,"next":[{"p":1.0,"node":{"c":3}}]}}]})");
  const auto r = run("eval --model " + cfg + " --lottery " + ragged);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("RaggedHorizon") != std::string::npos);

  const auto miss = run("eval --model " + cfg + " --lottery /tmp/no_such.json");
  CHECK(miss.exit_code == 1);
  CHECK(miss.output.find("FileNotFound") != std::string::npos);

  const auto badcfg = write_temp("bad.cfg", "family=exponential\nbogus=1\n");
  const auto lot = write_temp("lot.json", kLottery);
  CHECK(run("eval --model " + badcfg + " --lottery " + lot).exit_code == 1);
}

TEST_CASE("tax optimize reads the params file") {
  const auto cfg = write_temp("tax.cfg",
                              "beta=0.2939\ngamma=-9\nlabor_elasticity=0.2\n"
                              "ability_persistence=0.6\nlambda=0.625\n"
                              "mu_labor=0.375\nrho_inv=0.4\nalpha_h=0.35\n");
  const auto r = run("tax optimize --params " + cfg);
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.output);
  CHECK(j.at("tau_star").get<double>() == doctest::Approx(0.5157).epsilon(2e-3));
}

TEST_CASE("reproduce exits nonzero when a target misses") {
  // the HARA half of the comparison does not hit the published figure
  const auto r = run("reproduce hara");
  CHECK(r.exit_code == 1);
  const auto j = json::parse(r.output);
  CHECK_FALSE(j.at("pass").get<bool>());
  // but the EZ half and the integrals do
  int passed = 0;
  for (const auto& c : j.at("checks"))
    if (c.at("pass").get<bool>()) ++passed;
  CHECK(passed == 4);
}

TEST_CASE("suite subcommand emits a clean JSON report") {
  const auto cfg = write_temp(
      "ez.cfg", "family=ez\nalpha=-1\nrho=0.5\nbeta=0.9\nfelicity=linear\n");
  const auto r = run("suite prop1 --model " + cfg + " --n 25 --seed 3");
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(r.output);
  CHECK(j.at("pass").get<bool>());
  // degenerate draws may be skipped, so cases_run can fall short of n
  CHECK(j.at("cases_run").get<int>() >= 20);
}
