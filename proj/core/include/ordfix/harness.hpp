#pragma once

// Verification campaigns. Each campaign runs orbits, solves
// asymptotic centers and consults independent fixed-point oracles, then
// records one CheckResult per assertion. A campaign passes only if every
// check passes; hypothesis failures abort the campaign with a failing check.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordfix/asymcenter.hpp"
#include "ordfix/iterate.hpp"
#include "ordfix/mapping.hpp"
#include "ordfix/order.hpp"
#include "ordfix/space.hpp"

namespace ordfix {

enum class X0Policy { zero, sampled_below_Tx0, sampled_above_Tx0, explicit_point };
enum class Expectation { fixed_point_exists, no_fixed_point, unknown };

enum class Suite { t32, t33, t34, t41_44, c45_46 };

std::string_view to_string(Suite suite);
/// "t32", "t33", "t34", "t41-44", "c45-46" or "all". Throws ParseError.
std::vector<Suite> parse_suites(std::string_view name);

struct Scenario {
  std::string id;
  SpaceSpec space;
  ConeSpec cone;
  MappingSpec map;
  X0Policy x0_policy = X0Policy::zero;
  std::optional<Vector> x0;  ///< used with X0Policy::explicit_point
  double alpha = 0.0;        ///< class parameter the map is verified against
  Expectation expected = Expectation::unknown;
  std::uint64_t seed = 0;
  std::vector<Suite> suites;  ///< suites the scenario takes part in
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CampaignReport {
  std::string suite;
  std::string scenario_id;
  std::vector<CheckResult> checks;
  std::vector<std::string> caveats;

  bool passed() const;
  int passed_count() const;
  int failed_count() const;
};

struct T34FamilyConfig {
  int trials = 108;  ///< random bounded-regime maps, cycling through rhos x dims
  std::vector<int> dims{2, 5, 20};
  std::vector<double> rhos{0.5, 0.8, 0.95};
  int unbounded_trials = 12;  ///< identity plus non-zero translation
  bool include_identity_zero = true;
  int budget_multiplier = 10;  ///< re-run factor for inconclusive orbits
};

struct HarnessConfig {
  IterationConfig iteration{100'000, 1e-10, 1e4, 50};
  int verify_samples = 500;
  AsymCenterConfig center{};
  double center_fixed_tol = 1e-6;
  double feasibility_tol = 1e-9;
  double exact_match_tol = 1e-5;
  double convergence_tol = 1e-8;
  double norm_monotone_tol = 1e-12;
  int c46_samples = 8;
  T34FamilyConfig t34{};
  bool include_builtin = true;
  std::vector<Scenario> scenarios;  ///< extra scenarios from the config file
};

/// Parses the JSON configuration document (see docs/config-schema.md).
/// Missing keys keep their defaults. Throws ParseError.
HarnessConfig harness_config_from_json_text(std::string_view text);
HarnessConfig load_harness_config(const std::filesystem::path& path);

/// Built-in scenario corpus.
std::vector<Scenario> builtin_scenarios();

/// Fixed points known independently of the orbit: the linear solve for
/// affine maps, the lattice search for grid maps, a grid search over the
/// box for box domains and over the cone or R^d clipped to [-8, 8]^d
/// otherwise. Returns nullopt when no oracle applies (non-affine, d > 3).
std::optional<std::vector<Vector>> oracle_fixed_points(const Scenario& scenario);

CampaignReport verify_theorem_32(const Scenario& scenario, const HarnessConfig& cfg);
CampaignReport verify_theorem_33(const Scenario& scenario, const HarnessConfig& cfg);
CampaignReport verify_convergence_41_to_44(const Scenario& scenario, const HarnessConfig& cfg);
CampaignReport verify_corollaries_45_46(const Scenario& scenario, const HarnessConfig& cfg);

struct T34Trial {
  int index = 0;
  std::string family;  ///< "random", "identity_translation" or "identity_zero"
  int dim = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  double spectral_radius = 0.0;
  std::string verdict;
  std::size_t iterations = 0;
  bool rerun = false;
  bool bounded = false;
  bool fixed_point_found = false;
  bool agree = false;
};

/// Bounded orbit from 0 iff the fixed point set is non-empty, over the
/// generated family. Trials are appended to `trials` when non-null.
CampaignReport verify_theorem_34(const T34FamilyConfig& family, const HarnessConfig& cfg, std::uint64_t seed,
                                 std::vector<T34Trial>* trials = nullptr);

struct SuiteRun {
  std::vector<CampaignReport> reports;
  std::vector<T34Trial> t34_trials;

  bool passed() const;
};

SuiteRun run_suites(const std::vector<Suite>& suites, const HarnessConfig& cfg, std::uint64_t seed);

/// Fixed-width table, one row per campaign plus a total; deterministic.
std::string format_summary_table(const SuiteRun& run);

/// Writes summary.txt, checks.csv and t34_trials.csv into dir.
void write_suite_outputs(const SuiteRun& run, const std::filesystem::path& dir);

}  // namespace ordfix
