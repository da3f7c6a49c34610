#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ordfix/corpus.hpp"
#include "ordfix/error.hpp"
#include "ordfix/harness.hpp"

using namespace ordfix;

namespace {

const Scenario& find(const std::vector<Scenario>& all, std::string_view id) {
  for (const Scenario& s : all) {
    if (s.id == id) return s;
  }
  FAIL("missing scenario " << id);
  return all.front();
}

bool has_check(const CampaignReport& rep, std::string_view name, bool passed) {
  for (const CheckResult& c : rep.checks) {
    if (c.name == name && c.passed == passed) return true;
  }
  return false;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("suite names") {
  CHECK(parse_suites("all").size() == 5);
  CHECK(parse_suites("t41-44") == std::vector<Suite>{Suite::t41_44});
  CHECK(to_string(Suite::c45_46) == "c45-46");
  CHECK_THROWS_AS(parse_suites("t35"), ParseError);
}

TEST_CASE("built-in scenarios pass every suite they take part in") {
  const HarnessConfig cfg;
  for (const Scenario& s : builtin_scenarios()) {
    for (Suite suite : s.suites) {
      CampaignReport rep;
      switch (suite) {
        case Suite::t32: rep = verify_theorem_32(s, cfg); break;
        case Suite::t33: rep = verify_theorem_33(s, cfg); break;
        case Suite::t41_44: rep = verify_convergence_41_to_44(s, cfg); break;
        case Suite::c45_46: rep = verify_corollaries_45_46(s, cfg); break;
        case Suite::t34: break;
      }
      INFO(s.id << " / " << to_string(suite));
      for (const CheckResult& c : rep.checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
      }
      CHECK(rep.checks.size() > 1);
    }
  }
}

TEST_CASE("translation scenario is vacuous") {
  const auto all = builtin_scenarios();
  const CampaignReport rep = verify_theorem_32(find(all, "translation"), HarnessConfig{});
  CHECK(rep.passed());
  CHECK(has_check(rep, "unbounded orbit: no oracle fixed point >= x0", true));
  CHECK_FALSE(has_check(rep, "||Tz - z|| <= tol", true));
}

TEST_CASE("constant map converges in one step to its value") {
  const auto all = builtin_scenarios();
  const CampaignReport rep = verify_convergence_41_to_44(find(all, "constant"), HarnessConfig{});
  CHECK(rep.passed());
  CHECK(has_check(rep, "norms non-decreasing", true));
}

TEST_CASE("hypothesis violations abort the campaign") {
  Scenario s = find(builtin_scenarios(), "affine_contraction");
  s.id = "reversed";
  s.map = corpus::order_reversing_box();
  const CampaignReport rep = verify_theorem_32(s, HarnessConfig{});
  CHECK_FALSE(rep.passed());
  CHECK(rep.checks.size() == 1);

  // t33 needs x0 >= Tx0
  const CampaignReport wrong_side = verify_theorem_33(find(builtin_scenarios(), "affine_contraction"), HarnessConfig{});
  CHECK_FALSE(wrong_side.passed());
  CHECK(has_check(wrong_side, "hypothesis: x0 >= Tx0", false));

  // the step map is not nonexpansive, so alpha = 0 is rejected
  Scenario grid = find(builtin_scenarios(), "alpha_step_grid_low");
  grid.alpha = 0.0;
  CHECK_FALSE(verify_theorem_32(grid, HarnessConfig{}).passed());

  // corollaries need a cone domain
  CHECK_FALSE(verify_corollaries_45_46(find(builtin_scenarios(), "negative_translation_box"), HarnessConfig{}).passed());
}

TEST_CASE("sampled starting points satisfy their policy") {
  const auto all = builtin_scenarios();
  const CampaignReport below = verify_theorem_32(find(all, "affine_contraction_sampled_below"), HarnessConfig{});
  CHECK(has_check(below, "hypothesis: x0 <= Tx0", true));
  const CampaignReport above = verify_theorem_33(find(all, "affine_contraction_sampled_above"), HarnessConfig{});
  CHECK(has_check(above, "hypothesis: x0 >= Tx0", true));
}

TEST_CASE("fixed point oracles for scenarios") {
  const auto all = builtin_scenarios();
  CHECK(oracle_fixed_points(find(all, "translation"))->empty());
  CHECK(oracle_fixed_points(find(all, "affine_contraction"))->size() == 1);
  CHECK(oracle_fixed_points(find(all, "negative_translation_box"))->size() == 1);
  CHECK(oracle_fixed_points(find(all, "alpha_step_grid_high"))->front() == Vector::Zero(2));
  CHECK(oracle_fixed_points(find(all, "truncation"))->size() > 1);
}

TEST_CASE("bounded zero orbit iff a fixed point exists, random affine family") {
  T34FamilyConfig fam;
  fam.trials = 18;
  fam.dims = {2, 5};
  fam.unbounded_trials = 4;
  std::vector<T34Trial> trials;
  const CampaignReport rep = verify_theorem_34(fam, HarnessConfig{}, 3, &trials);
  CHECK(rep.passed());
  REQUIRE(trials.size() == 23);
  for (const T34Trial& t : trials) {
    CHECK(t.agree);
    if (t.family == "random") {
      CHECK(t.spectral_radius <= t.rho + 1e-12);
      CHECK(t.bounded);
    }
    if (t.family == "identity_translation") CHECK_FALSE(t.fixed_point_found);
    if (t.family == "identity_zero") CHECK(t.bounded);
  }
  // every (rho, dim) combination appears
  for (double rho : fam.rhos) {
    for (int d : fam.dims) {
      CHECK(std::any_of(trials.begin(), trials.end(), [&](const T34Trial& t) { return t.rho == rho && t.dim == d; }));
    }
  }
  fam.dims.clear();
  CHECK_THROWS_AS(verify_theorem_34(fam, HarnessConfig{}, 3), PreconditionError);
}

TEST_CASE("suite runs are reproducible") {
  HarnessConfig cfg;
  cfg.t34.trials = 9;
  cfg.t34.unbounded_trials = 3;
  const SuiteRun a = run_suites(parse_suites("all"), cfg, 11);
  const SuiteRun b = run_suites(parse_suites("all"), cfg, 11);
  CHECK(a.passed());
  CHECK(format_summary_table(a) == format_summary_table(b));

  const auto dir = std::filesystem::temp_directory_path() / "ordfix_test_suite_out";
  write_suite_outputs(a, dir);
  CHECK(read_file(dir / "summary.txt") == format_summary_table(a));
  const std::string trials = read_file(dir / "t34_trials.csv");
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 1 + 13);
  CHECK(read_file(dir / "checks.csv").rfind("suite,scenario,check,passed,detail\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration files") {
  const std::filesystem::path dir = ORDFIX_CONFIG_DIR;
  const HarnessConfig def = load_harness_config(dir / "default.json");
  CHECK(def.include_builtin);
  CHECK(def.t34.trials == 108);
  CHECK(def.iteration.bound_threshold == 1e4);
  REQUIRE(def.scenarios.size() == 1);
  CHECK(def.scenarios[0].space.p() == 2.5);

  const HarnessConfig bad = load_harness_config(dir / "falsify.json");
  CHECK_FALSE(bad.include_builtin);
  const SuiteRun run = run_suites(parse_suites("all"), bad, 1);
  CHECK_FALSE(run.passed());
  CHECK(format_summary_table(run).find("FAIL t32/order_reversing_box") != std::string::npos);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(harness_config_from_json_text("[1, 2]"), ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text("{"), ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text(R"({"iteration": {"max_iter": 0}})"), ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text(R"({"samples": 0})"), ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text(R"({"scenarios": [{"id": "x"}]})"), ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text(
                      R"({"scenarios": [{"id": "x", "map": {"variant": "translation", "b": [1]}, "x0": "left"}]})"),
                  ParseError);
  CHECK_THROWS_AS(harness_config_from_json_text(
                      R"({"scenarios": [{"id": "x", "map": {"variant": "translation", "b": [1]}, "x0": [1, 2]}]})"),
                  DimensionMismatch);
  CHECK_THROWS_AS(load_harness_config("/nonexistent.json"), ParseError);
  const HarnessConfig cfg = harness_config_from_json_text(
      R"({"scenarios": [{"id": "x", "map": {"variant": "translation", "b": [1]}, "x0": [0.5],
                         "expected": "no_fixed_point", "suites": ["t32", "t41-44"]}]})");
  REQUIRE(cfg.scenarios.size() == 1);
  CHECK(cfg.scenarios[0].x0_policy == X0Policy::explicit_point);
  CHECK(cfg.scenarios[0].suites.size() == 2);
}
