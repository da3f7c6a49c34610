#include "ordfix/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"
#include "ordfix/error.hpp"
#include "ordfix/sampling.hpp"
#include "ordfix/verify.hpp"

namespace ordfix {

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::t32: return "t32";
    case Suite::t33: return "t33";
    case Suite::t34: return "t34";
    case Suite::t41_44: return "t41-44";
    case Suite::c45_46: return "c45-46";
  }
  return "?";
}

std::vector<Suite> parse_suites(std::string_view name) {
  using enum Suite;
  if (name == "all") return {t32, t33, t34, t41_44, c45_46};
  for (Suite s : {t32, t33, t34, t41_44, c45_46}) {
    if (to_string(s) == name) return {s};
  }
  throw ParseError(fmt::format("unknown suite '{}'", name));
}

bool CampaignReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int CampaignReport::passed_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; }));
}

int CampaignReport::failed_count() const { return static_cast<int>(checks.size()) - passed_count(); }

bool SuiteRun::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const CampaignReport& r) { return r.passed(); });
}

namespace {

std::string vec(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{:.6g}", v[i]);
  }
  return out + ")";
}

void add(CampaignReport& rep, std::string name, bool passed, std::string detail = {}) {
  rep.checks.push_back({std::move(name), passed, std::move(detail)});
}

// Records a hypothesis check; returns whether the campaign may continue.
bool require(CampaignReport& rep, std::string name, bool passed, std::string detail = {}) {
  add(rep, std::move(name), passed, std::move(detail));
  return passed;
}

std::string describe(const PropertyReport& r) {
  if (r.passed()) return fmt::format("{} pairs", r.samples_tested);
  const Violation& v = r.violations.front();
  return fmt::format("{} of {} pairs violate ({}): x={} y={} lhs={:.6g} rhs={:.6g}", r.violations.size(),
                     r.samples_tested, v.kind, vec(v.x), vec(v.y), v.lhs, v.rhs);
}

std::vector<OrderedPair> class_pairs(const Scenario& s, const HarnessConfig& cfg, std::uint64_t stream) {
  if (s.map.domain().kind == Domain::Kind::lattice) {
    return lattice_comparable_pairs(std::get<maps::GridDefined>(s.map.variant()).table, s.cone);
  }
  return sample_comparable_pairs(s.map, s.cone,
                                 {.samples = cfg.verify_samples, .seed = derive_seed(s.seed, stream), .scale = 4.0});
}

bool require_alpha_class(CampaignReport& rep, const Scenario& s, const HarnessConfig& cfg, double alpha) {
  const auto pairs = class_pairs(s, cfg, 0xa1);
  const PropertyReport r = alpha == 0.0 ? check_monotone_nonexpansive(s.map, s.cone, s.space, pairs)
                                        : check_alpha_nonexpansive(s.map, s.cone, s.space, alpha, pairs);
  return require(rep, fmt::format("hypothesis: monotone {}-nonexpansive", alpha), r.passed(), describe(r));
}

// Starting point per the scenario policy; nullopt (with a failing check) when
// none can be produced.
std::optional<Vector> resolve_x0(CampaignReport& rep, const Scenario& s) {
  const int d = s.map.dim();
  switch (s.x0_policy) {
    case X0Policy::zero: return Vector::Zero(d);
    case X0Policy::explicit_point:
      if (!s.x0) {
        add(rep, "hypothesis: starting point", false, "explicit policy without a point");
        return std::nullopt;
      }
      return *s.x0;
    case X0Policy::sampled_below_Tx0:
    case X0Policy::sampled_above_Tx0: {
      const bool below = s.x0_policy == X0Policy::sampled_below_Tx0;
      Rng rng(derive_seed(s.seed, 0x30));
      for (int attempt = 0; attempt < 2000; ++attempt) {
        const Vector x = sample_domain_point(s.map, rng, 4.0);
        const Vector tx = apply(s.map, x);
        if (below ? leq(s.cone, x, tx) : leq(s.cone, tx, x)) return x;
      }
      add(rep, "hypothesis: starting point", false,
          fmt::format("no sampled x with {} in 2000 draws", below ? "x <= Tx" : "Tx <= x"));
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_affine(const MappingSpec& map) { return std::holds_alternative<maps::Affine>(map.variant()); }

// The linear-solve fixed point when it is the unique one.
std::optional<Vector> unique_exact_fixed_point(const MappingSpec& map) {
  const auto* a = std::get_if<maps::Affine>(&map.variant());
  if (!a || !(spectral_radius(a->A) < 1.0)) return std::nullopt;
  return affine_fixed_point(map);
}

std::optional<Vector> find_dominating(const std::vector<Vector>& points, const ConeSpec& cone, const Vector& x0,
                                      bool above) {
  for (const Vector& z : points) {
    if (above ? leq(cone, x0, z, 1e-9) : leq(cone, z, x0, 1e-9)) return z;
  }
  return std::nullopt;
}

void check_expectation(CampaignReport& rep, const Scenario& s, const std::optional<std::vector<Vector>>& oracle) {
  if (s.expected == Expectation::unknown) return;
  if (!oracle) {
    rep.caveats.push_back("no fixed-point oracle applies; declared expectation not cross-checked");
    return;
  }
  const bool exists = !oracle->empty();
  const bool want = s.expected == Expectation::fixed_point_exists;
  add(rep, "oracle agrees with declared expectation", exists == want,
      fmt::format("oracle found {} fixed point(s); expected {}", oracle->size(), want ? "some" : "none"));
}

// Asymptotic-center checks shared by the increasing and decreasing campaigns.
std::optional<AsymCenterResult> center_checks(CampaignReport& rep, const Scenario& s, const HarnessConfig& cfg,
                                              const OrbitRecord& orbit, const Vector& x0, bool increasing) {
  AsymCenterProblem problem = asym_center_problem_from_orbit(orbit, s.cone, s.space);
  problem.direction = increasing ? TailDirection::increasing : TailDirection::decreasing;
  problem = make_asym_center_problem(std::move(problem.tail), s.cone, s.space, problem.direction);
  AsymCenterResult res;
  try {
    res = solve_asym_center(problem, cfg.center);
  } catch (const SolverError& e) {
    add(rep, "asymptotic center certified", false, e.what());
    return std::nullopt;
  }
  attach_fixed_point_residual(s.map, s.space, res);
  add(rep, "asymptotic center certified", res.certified,
      fmt::format("f(z)={:.6g} lower bound={:.6g} after {} steps", res.r, res.lower_bound, res.iterations));
  rep.caveats.push_back(fmt::format("finite tail of {} points replaces the limsup", problem.tail.size()));

  int infeasible = 0;
  for (const Vector& x : problem.tail) {
    if (!(increasing ? leq(s.cone, x, res.z, cfg.feasibility_tol) : leq(s.cone, res.z, x, cfg.feasibility_tol))) {
      ++infeasible;
    }
  }
  add(rep, increasing ? "tail points <= z" : "tail points >= z", infeasible == 0,
      fmt::format("{} of {} infeasible; z={}", infeasible, problem.tail.size(), vec(res.z)));
  add(rep, "||Tz - z|| <= tol", res.fixed_point_residual <= cfg.center_fixed_tol,
      fmt::format("residual={:.3g} tol={:.3g}", res.fixed_point_residual, cfg.center_fixed_tol));
  add(rep, increasing ? "x0 <= z" : "z <= x0",
      increasing ? leq(s.cone, x0, res.z, cfg.feasibility_tol) : leq(s.cone, res.z, x0, cfg.feasibility_tol),
      fmt::format("x0={} z={}", vec(x0), vec(res.z)));

  if (std::isfinite(res.fixed_point_residual)) {
    const Vector tz = apply(s.map, res.z);
    const double f_tz = asymptotic_radius(problem, tz);
    add(rep, "f(Tz) <= f(z)", inequality_holds(f_tz, res.r), fmt::format("f(Tz)={:.6g} f(z)={:.6g}", f_tz, res.r));
    const Vector mid = 0.5 * (res.z + tz);
    const bool feasible = std::all_of(problem.tail.begin(), problem.tail.end(), [&](const Vector& x) {
      return increasing ? leq(s.cone, x, mid, cfg.feasibility_tol) : leq(s.cone, mid, x, cfg.feasibility_tol);
    });
    if (feasible) {
      const double f_mid = asymptotic_radius(problem, mid);
      add(rep, "f((z+Tz)/2) >= f(z)", inequality_holds(res.r, f_mid),
          fmt::format("f(mid)={:.6g} f(z)={:.6g}", f_mid, res.r));
    }
  }
  if (auto exact = unique_exact_fixed_point(s.map)) {
    const double err = distance(s.space, res.z, *exact);
    add(rep, "z matches linear solve", err <= cfg.exact_match_tol,
        fmt::format("||z - z_exact||={:.3g} z_exact={}", err, vec(*exact)));
  }
  return res;
}

// ||x_n - z|| is non-increasing and bounded by ||x_0 - z||.
void descent_check(CampaignReport& rep, const Scenario& s, const OrbitRecord& orbit, const Vector& z,
                   std::string_view source) {
  const double d0 = distance(s.space, orbit.points.front(), z);
  double prev = d0;
  std::optional<std::size_t> bad;
  for (std::size_t n = 0; n < orbit.points.size(); ++n) {
    const double dn = distance(s.space, orbit.points[n], z);
    if (!inequality_holds(dn, prev) || !inequality_holds(dn, d0)) {
      bad = n;
      break;
    }
    prev = dn;
  }
  add(rep, "orbit stays within ||x0 - z|| of z", !bad,
      bad ? fmt::format("distance grows at n={} ({} z={})", *bad, source, vec(z))
          : fmt::format("{} z={} ||x0 - z||={:.6g}", source, vec(z), d0));
}

CampaignReport order_campaign(const Scenario& s, const HarnessConfig& cfg, bool increasing) {
  CampaignReport rep{increasing ? "t32" : "t33", s.id, {}, {}};
  if (!require_alpha_class(rep, s, cfg, s.alpha)) return rep;
  const auto x0 = resolve_x0(rep, s);
  if (!x0) return rep;
  const Vector tx0 = apply(s.map, *x0);
  if (!require(rep, increasing ? "hypothesis: x0 <= Tx0" : "hypothesis: x0 >= Tx0",
               increasing ? leq(s.cone, *x0, tx0) : leq(s.cone, tx0, *x0),
               fmt::format("x0={} Tx0={}", vec(*x0), vec(tx0)))) {
    return rep;
  }

  const OrbitRecord orbit = picard_orbit(s.map, *x0, s.cone, s.space, cfg.iteration);
  const MonotoneCheck chain = check_orbit_monotone(orbit, s.cone);
  add(rep, increasing ? "orbit is increasing" : "orbit is decreasing", increasing ? chain.increasing : chain.decreasing,
      chain.first_violation ? fmt::format("chain breaks at n={}", *chain.first_violation)
                            : fmt::format("{} points", orbit.points.size()));

  const auto oracle = oracle_fixed_points(s);
  check_expectation(rep, s, oracle);
  const auto dominating = oracle ? find_dominating(*oracle, s.cone, *x0, increasing) : std::nullopt;

  switch (orbit.verdict) {
    case OrbitVerdict::unbounded_suspected:
      rep.caveats.push_back("orbit flagged unbounded; the fixed-point conclusion is vacuous");
      if (!oracle) {
        rep.caveats.push_back("no fixed-point oracle; unbounded branch not cross-checked");
      } else {
        add(rep, increasing ? "unbounded orbit: no oracle fixed point >= x0" : "unbounded orbit: no oracle fixed point <= x0",
            !dominating, dominating ? fmt::format("oracle fixed point {}", vec(*dominating)) : "none found");
      }
      return rep;
    case OrbitVerdict::max_iter_reached:
      add(rep, "orbit verdict conclusive", false,
          fmt::format("max_iter={} reached, last residual {:.3g}", cfg.iteration.max_iter, orbit.residuals.back()));
      return rep;
    case OrbitVerdict::converged: break;
  }

  const auto center = center_checks(rep, s, cfg, orbit, *x0, increasing);
  if (dominating) {
    descent_check(rep, s, orbit, *dominating, "oracle");
  } else if (center) {
    descent_check(rep, s, orbit, center->z, "center");
  }
  if (!increasing) {
    rep.caveats.push_back("F_<=(T) as literally defined equals F(T); the order relation z <= x0 is checked instead");
  }
  return rep;
}

CampaignReport guarded(std::string_view suite, const Scenario& s, CampaignReport (*fn)(const Scenario&, const HarnessConfig&),
                       const HarnessConfig& cfg) {
  try {
    return fn(s, cfg);
  } catch (const Error& e) {
    CampaignReport rep{std::string(suite), s.id, {}, {}};
    add(rep, "campaign completed", false, e.what());
    return rep;
  }
}

}  // namespace

std::optional<std::vector<Vector>> oracle_fixed_points(const Scenario& s) {
  const MappingSpec& map = s.map;
  const int d = map.dim();
  if (is_affine(map)) {
    std::vector<Vector> out;
    if (auto z = affine_fixed_point(map)) out.push_back(*z);
    return out;
  }
  FixedPointSearchConfig cfg;
  switch (map.domain().kind) {
    case Domain::Kind::lattice: return fixed_point_oracle(map, cfg);
    case Domain::Kind::box:
    case Domain::Kind::order_interval:
      cfg.lo = map.domain().lo;
      cfg.hi = map.domain().hi;
      break;
    case Domain::Kind::cone:
    case Domain::Kind::whole_space:
      cfg.lo = Vector::Constant(d, -8.0);
      cfg.hi = Vector::Constant(d, 8.0);
      break;
  }
  if (map.domain().kind == Domain::Kind::order_interval) {
    // order intervals of the Lorentz cone sit inside a box around them
    const double r = (cfg.hi - cfg.lo).norm();
    cfg.lo = cfg.lo.array() - r;
    cfg.hi = cfg.hi.array() + r;
  }
  if (d > 3) return std::nullopt;
  return fixed_point_oracle(map, cfg);
}

CampaignReport verify_theorem_32(const Scenario& scenario, const HarnessConfig& cfg) {
  return order_campaign(scenario, cfg, true);
}

CampaignReport verify_theorem_33(const Scenario& scenario, const HarnessConfig& cfg) {
  return order_campaign(scenario, cfg, false);
}

CampaignReport verify_convergence_41_to_44(const Scenario& s, const HarnessConfig& cfg) {
  CampaignReport rep{"t41-44", s.id, {}, {}};
  if (!require_alpha_class(rep, s, cfg, s.alpha)) return rep;
  const NormMonotonicityReport nm = is_norm_monotonic(s.cone, s.space, cfg.verify_samples, derive_seed(s.seed, 0x41));
  if (!require(rep, "hypothesis: norm is monotonic", nm.passed,
               nm.witness ? fmt::format("||x||={:.6g} > ||y||={:.6g}", nm.witness->norm_x, nm.witness->norm_y)
                          : fmt::format("{} pairs", nm.samples))) {
    return rep;
  }
  const double gamma = normality_constant_estimate(s.cone, s.space, cfg.verify_samples, derive_seed(s.seed, 0x42));
  add(rep, "cone is normal with constant <= 1", inequality_holds(gamma, 1.0), fmt::format("estimate={:.6g}", gamma));

  const auto x0 = resolve_x0(rep, s);
  if (!x0) return rep;
  const Vector tx0 = apply(s.map, *x0);
  const bool up = leq(s.cone, *x0, tx0);
  const bool down = leq(s.cone, tx0, *x0);
  if (!require(rep, "hypothesis: x0 <= Tx0 or x0 >= Tx0", up || down,
               fmt::format("x0={} Tx0={}", vec(*x0), vec(tx0)))) {
    return rep;
  }
  const Vector zero = Vector::Zero(s.map.dim());
  const bool strong = up ? leq(s.cone, zero, *x0) : leq(s.cone, *x0, zero);
  rep.caveats.push_back(fmt::format("case {}{}", up ? "x0 <= Tx0" : "x0 >= Tx0",
                                    strong ? (up ? ", 0 <= x0" : ", x0 <= 0") : ""));
  rep.caveats.push_back("finite dimension: weak and strong convergence are both checked as norm convergence");

  const OrbitRecord orbit = picard_orbit(s.map, *x0, s.cone, s.space, cfg.iteration);
  if (!require(rep, "hypothesis: orbit is bounded", orbit.verdict == OrbitVerdict::converged,
               fmt::format("verdict {}", to_string(orbit.verdict)))) {
    return rep;
  }
  const MonotoneCheck chain = check_orbit_monotone(orbit, s.cone);
  add(rep, up ? "orbit is increasing" : "orbit is decreasing", up ? chain.increasing : chain.decreasing,
      chain.first_violation ? fmt::format("chain breaks at n={}", *chain.first_violation) : "");

  Vector z;
  std::string source;
  if (auto exact = unique_exact_fixed_point(s.map)) {
    z = *exact;
    source = "linear solve";
  } else {
    AsymCenterProblem problem = asym_center_problem_from_orbit(orbit, s.cone, s.space);
    problem = make_asym_center_problem(std::move(problem.tail), s.cone, s.space,
                                       up ? TailDirection::increasing : TailDirection::decreasing);
    z = solve_asym_center(problem, cfg.center).z;
    source = "asymptotic center";
  }
  const Vector& xn = orbit.last();
  const double err = distance(s.space, xn, z);
  add(rep, "orbit converges in norm to z", err <= cfg.convergence_tol,
      fmt::format("||x_n - z||={:.3g} at n={} (z from {}: {})", err, orbit.points.size() - 1, source, vec(z)));
  const double res = distance(s.space, apply(s.map, z), z);
  add(rep, "||Tz - z|| <= tol", res <= cfg.center_fixed_tol, fmt::format("residual={:.3g}", res));
  if (up) {
    add(rep, "x0 <= z", leq(s.cone, *x0, z, cfg.feasibility_tol), fmt::format("x0={} z={}", vec(*x0), vec(z)));
  } else {
    const bool below = leq(s.cone, z, *x0, cfg.feasibility_tol);
    const bool above = leq(s.cone, *x0, z, cfg.feasibility_tol);
    add(rep, "z <= x0 or x0 <= z", below || above, fmt::format("x0={} z={}", vec(*x0), vec(z)));
    rep.caveats.push_back("decreasing case: the stated membership z in F_>=(T) is checked as a disjunction");
  }

  if (strong) {
    std::optional<std::size_t> drop;
    for (std::size_t n = 0; n + 1 < orbit.norms.size(); ++n) {
      if (orbit.norms[n + 1] < orbit.norms[n] - cfg.norm_monotone_tol) {
        drop = n + 1;
        break;
      }
    }
    add(rep, up ? "norms non-decreasing" : "reflected norms non-decreasing", !drop,
        drop ? fmt::format("||x_{}||={:.17g} < ||x_{}||={:.17g}", *drop, orbit.norms[*drop], *drop - 1,
                           orbit.norms[*drop - 1])
             : fmt::format("{} norms", orbit.norms.size()));
    const double nz = norm(s.space, z);
    const double max_norm = *std::max_element(orbit.norms.begin(), orbit.norms.end());
    add(rep, "norms bounded by ||z||", inequality_holds(max_norm, nz),
        fmt::format("max ||x_n||={:.6g} ||z||={:.6g}", max_norm, nz));
    const double gap = std::abs(orbit.norms.back() - nz);
    add(rep, "||x_n|| converges to ||z||", gap <= cfg.convergence_tol, fmt::format("gap={:.3g}", gap));
  }
  return rep;
}

CampaignReport verify_corollaries_45_46(const Scenario& s, const HarnessConfig& cfg) {
  CampaignReport rep{"c45-46", s.id, {}, {}};
  if (!require(rep, "hypothesis: cone domain", s.map.domain().kind == Domain::Kind::cone,
               fmt::format("domain {}", to_string(s.map.domain().kind)))) {
    return rep;
  }
  const auto oracle = oracle_fixed_points(s);
  if (!require(rep, "hypothesis: fixed point set non-empty", oracle && !oracle->empty(),
               oracle ? fmt::format("oracle found {}", oracle->size()) : "no oracle applies")) {
    return rep;
  }
  if (!require_alpha_class(rep, s, cfg, s.alpha)) return rep;

  const int d = s.map.dim();
  const OrbitRecord from_zero = picard_orbit(s.map, Vector::Zero(d), s.cone, s.space, cfg.iteration);
  if (!require(rep, "orbit of 0 converges", from_zero.verdict == OrbitVerdict::converged,
               fmt::format("verdict {} after {} points", to_string(from_zero.verdict), from_zero.points.size()))) {
    return rep;
  }
  const Vector z0 = from_zero.last();
  const double res0 = distance(s.space, apply(s.map, z0), z0);
  add(rep, "limit of T^n 0 is a fixed point", res0 <= cfg.center_fixed_tol,
      fmt::format("limit={} residual={:.3g}", vec(z0), res0));
  const auto exact = unique_exact_fixed_point(s.map);
  if (exact) {
    const double err0 = distance(s.space, z0, *exact);
    add(rep, "limit of T^n 0 matches linear solve", err0 <= cfg.convergence_tol, fmt::format("error={:.3g}", err0));
  }

  const auto pairs = class_pairs(s, cfg, 0xa2);
  const PropertyReport ne = check_monotone_nonexpansive(s.map, s.cone, s.space, pairs);
  if (!ne.passed()) {
    rep.caveats.push_back("map is not nonexpansive; the domination statement is not checked");
    return rep;
  }

  Rng rng(derive_seed(s.seed, 0x46));
  std::vector<Vector> starts;
  for (int attempt = 0; attempt < 200 * cfg.c46_samples && static_cast<int>(starts.size()) < cfg.c46_samples;
       ++attempt) {
    const Vector x = sample_domain_point(s.map, rng, 4.0);
    if (leq(s.cone, x, apply(s.map, x))) starts.push_back(x);
  }
  if (starts.empty()) {
    rep.caveats.push_back("no sampled x in P with x <= Tx; the domination statement is not checked");
    return rep;
  }
  int bad_limit = 0;
  int bad_domination = 0;
  std::string witness;
  for (const Vector& x : starts) {
    const OrbitRecord orbit = picard_orbit(s.map, x, s.cone, s.space, cfg.iteration);
    if (orbit.verdict != OrbitVerdict::converged ||
        distance(s.space, apply(s.map, orbit.last()), orbit.last()) > cfg.center_fixed_tol ||
        (exact && distance(s.space, orbit.last(), *exact) > cfg.convergence_tol)) {
      ++bad_limit;
    }
    const double bound = norm(s.space, x);
    Vector u = Vector::Zero(d);
    Vector v = x;
    const std::size_t steps = std::max(orbit.points.size(), from_zero.points.size());
    for (std::size_t n = 0; n < steps; ++n) {
      const double gap = distance(s.space, u, v);
      if (!inequality_holds(gap, bound)) {
        if (witness.empty()) witness = fmt::format("x={} n={} gap={:.6g} ||x||={:.6g}", vec(x), n, gap, bound);
        ++bad_domination;
        break;
      }
      u = apply(s.map, u);
      v = apply(s.map, v);
    }
  }
  add(rep, "orbits from x <= Tx converge to fixed points", bad_limit == 0,
      fmt::format("{} of {} starts fail", bad_limit, starts.size()));
  add(rep, "||T^n 0 - T^n x|| <= ||x|| at every step", bad_domination == 0,
      witness.empty() ? fmt::format("{} starts", starts.size()) : witness);
  return rep;
}

namespace {

Matrix random_scaled_matrix(int dim, double rho, Rng& rng) {
  Matrix M(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) M(i, j) = rng.uniform(0.0, 1.0);
  }
  const double sigma = Eigen::JacobiSVD<Matrix>(M).singularValues()(0);
  return (rho / sigma) * M;
}

}  // namespace

CampaignReport verify_theorem_34(const T34FamilyConfig& family, const HarnessConfig& cfg, std::uint64_t seed,
                                 std::vector<T34Trial>* trials) {
  CampaignReport rep{"t34", "generated_family", {}, {}};
  if (family.dims.empty() || family.rhos.empty()) throw PreconditionError("t34: dims and rhos must be non-empty");
  if (family.budget_multiplier < 1) throw PreconditionError("t34: budget_multiplier must be >= 1");
  const int combos = static_cast<int>(family.dims.size() * family.rhos.size());
  const int total = family.trials + family.unbounded_trials + (family.include_identity_zero ? 1 : 0);

  int mismatches = 0;
  int reruns = 0;
  int rejected = 0;
  std::string first_mismatch;
  for (int i = 0; i < total; ++i) {
    T34Trial t;
    t.index = i;
    t.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(t.seed);
    Matrix A;
    Vector b;
    if (i < family.trials) {
      const int c = i % combos;
      t.family = "random";
      t.dim = family.dims[static_cast<std::size_t>(c) % family.dims.size()];
      t.rho = family.rhos[static_cast<std::size_t>(c) / family.dims.size()];
      A = random_scaled_matrix(t.dim, t.rho, rng);
      b = rng.uniform_cube(t.dim, 0.0, 1.0);
    } else if (i < family.trials + family.unbounded_trials) {
      t.family = "identity_translation";
      t.dim = family.dims[static_cast<std::size_t>(i - family.trials) % family.dims.size()];
      t.rho = 1.0;
      A = Matrix::Identity(t.dim, t.dim);
      b = rng.uniform_cube(t.dim, 0.5, 1.5);
    } else {
      t.family = "identity_zero";
      t.dim = family.dims.front();
      t.rho = 1.0;
      A = Matrix::Identity(t.dim, t.dim);
      b = Vector::Zero(t.dim);
    }
    t.spectral_radius = spectral_radius(A);
    const ConeSpec cone = ConeSpec::orthant(t.dim);
    const SpaceSpec space(t.dim, 2.0);
    std::optional<MappingSpec> map;
    try {
      map = MappingSpec::affine(A, b, Domain::of_cone(cone));
    } catch (const DomainError&) {
      ++rejected;
      continue;
    }

    IterationConfig icfg = cfg.iteration;
    OrbitRecord orbit = picard_orbit(*map, Vector::Zero(t.dim), cone, space, icfg);
    if (orbit.verdict == OrbitVerdict::max_iter_reached) {
      t.rerun = true;
      ++reruns;
      icfg.max_iter *= family.budget_multiplier;
      orbit = picard_orbit(*map, Vector::Zero(t.dim), cone, space, icfg);
    }
    t.verdict = std::string(to_string(orbit.verdict));
    t.iterations = orbit.points.size() - 1;
    t.bounded = orbit.verdict == OrbitVerdict::converged;
    t.fixed_point_found = affine_fixed_point(*map).has_value();
    t.agree = orbit.verdict != OrbitVerdict::max_iter_reached && t.bounded == t.fixed_point_found;
    if (!t.agree) {
      ++mismatches;
      if (first_mismatch.empty()) {
        first_mismatch = fmt::format("trial {} ({}, dim {}): verdict {}, oracle {}", i, t.family, t.dim, t.verdict,
                                     t.fixed_point_found ? "non-empty" : "empty");
      }
    }
    if (trials) trials->push_back(std::move(t));
  }
  add(rep, "generator produced cone self-maps", rejected == 0, fmt::format("{} rejected", rejected));
  add(rep, "bounded O(0) iff fixed point set non-empty", mismatches == 0,
      mismatches == 0 ? fmt::format("{} of {} trials agree", total - rejected, total - rejected) : first_mismatch);
  if (reruns > 0) rep.caveats.push_back(fmt::format("{} trial(s) re-run with a larger budget", reruns));
  rep.caveats.push_back("unboundedness is a detector verdict (norm threshold plus sustained growth)");
  return rep;
}

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

SuiteRun run_suites(const std::vector<Suite>& suites, const HarnessConfig& cfg, std::uint64_t seed) {
  std::vector<Scenario> scenarios;
  if (cfg.include_builtin) scenarios = builtin_scenarios();
  scenarios.insert(scenarios.end(), cfg.scenarios.begin(), cfg.scenarios.end());
  for (Scenario& s : scenarios) s.seed = derive_seed(seed, s.seed ^ fnv1a(s.id));

  std::vector<Suite> ordered = suites;
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  SuiteRun run;
  for (Suite suite : ordered) {
    if (suite == Suite::t34) {
      try {
        run.reports.push_back(verify_theorem_34(cfg.t34, cfg, derive_seed(seed, 34), &run.t34_trials));
      } catch (const Error& e) {
        CampaignReport rep{"t34", "generated_family", {}, {}};
        add(rep, "campaign completed", false, e.what());
        run.reports.push_back(std::move(rep));
      }
      continue;
    }
    CampaignReport (*fn)(const Scenario&, const HarnessConfig&) = nullptr;
    switch (suite) {
      case Suite::t32: fn = verify_theorem_32; break;
      case Suite::t33: fn = verify_theorem_33; break;
      case Suite::t41_44: fn = verify_convergence_41_to_44; break;
      case Suite::c45_46: fn = verify_corollaries_45_46; break;
      case Suite::t34: break;
    }
    for (const Scenario& s : scenarios) {
      if (std::find(s.suites.begin(), s.suites.end(), suite) == s.suites.end()) continue;
      run.reports.push_back(guarded(to_string(suite), s, fn, cfg));
    }
  }
  return run;
}

std::string format_summary_table(const SuiteRun& run) {
  std::string out = fmt::format("{:<8} {:<34} {:>6} {:>6} {:>6}  {}\n", "suite", "scenario", "checks", "passed",
                                "failed", "verdict");
  int checks = 0;
  int passed = 0;
  for (const CampaignReport& r : run.reports) {
    checks += static_cast<int>(r.checks.size());
    passed += r.passed_count();
    out += fmt::format("{:<8} {:<34} {:>6} {:>6} {:>6}  {}\n", r.suite, r.scenario_id, r.checks.size(),
                       r.passed_count(), r.failed_count(), r.passed() ? "PASS" : "FAIL");
  }
  out += fmt::format("{:<8} {:<34} {:>6} {:>6} {:>6}  {}\n", "total", "", checks, passed, checks - passed,
                     run.passed() ? "PASS" : "FAIL");
  for (const CampaignReport& r : run.reports) {
    for (const CheckResult& c : r.checks) {
      if (!c.passed) out += fmt::format("FAIL {}/{}: {}: {}\n", r.suite, r.scenario_id, c.name, c.detail);
    }
  }
  return out;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  return out;
}

}  // namespace

void write_suite_outputs(const SuiteRun& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  open_output(dir / "summary.txt") << format_summary_table(run);

  auto checks = open_output(dir / "checks.csv");
  checks << "suite,scenario,check,passed,detail\n";
  for (const CampaignReport& r : run.reports) {
    for (const CheckResult& c : r.checks) {
      checks << r.suite << ',' << csv_field(r.scenario_id) << ',' << csv_field(c.name) << ',' << (c.passed ? 1 : 0)
             << ',' << csv_field(c.detail) << '\n';
    }
    for (const std::string& caveat : r.caveats) {
      checks << r.suite << ',' << csv_field(r.scenario_id) << ",caveat,," << csv_field(caveat) << '\n';
    }
  }

  auto t34 = open_output(dir / "t34_trials.csv");
  t34 << "trial,family,dim,rho,seed,spectral_radius,verdict,iterations,rerun,bounded,fixed_point_found,agree\n";
  for (const T34Trial& t : run.t34_trials) {
    t34 << fmt::format("{},{},{},{},{},{:.17g},{},{},{},{},{},{}\n", t.index, t.family, t.dim, t.rho, t.seed,
                       t.spectral_radius, t.verdict, t.iterations, int(t.rerun), int(t.bounded),
                       int(t.fixed_point_found), int(t.agree));
  }
}

// ---------------------------------------------------------------------------
// configuration

namespace {

using detail::json;

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Scenario scenario_from_json(const json& j) {
  if (!j.contains("id") || !j.contains("map")) throw ParseError("scenario needs 'id' and 'map'");
  MappingSpec map = detail::mapping_from_json(j.at("map"));
  const int d = map.dim();
  const double p = j.value("p", 2.0);
  const ConeKind kind = parse_cone_kind(j.value("cone", std::string("orthant")));
  Scenario s{.id = j.at("id").get<std::string>(),
             .space = SpaceSpec(d, p),
             .cone = ConeSpec(kind, d),
             .map = std::move(map),
             .x0_policy = X0Policy::zero,
             .x0 = std::nullopt,
             .alpha = j.value("alpha", 0.0),
             .expected = Expectation::unknown,
             .seed = j.value("seed", std::uint64_t{0}),
             .suites = {}};
  if (j.contains("x0")) {
    const json& x0 = j.at("x0");
    if (x0.is_array()) {
      s.x0_policy = X0Policy::explicit_point;
      s.x0 = detail::vector_from_json(x0, "x0");
      require_dim(*s.x0, d, "scenario x0");
    } else {
      const std::string policy = x0.get<std::string>();
      if (policy == "zero") s.x0_policy = X0Policy::zero;
      else if (policy == "below") s.x0_policy = X0Policy::sampled_below_Tx0;
      else if (policy == "above") s.x0_policy = X0Policy::sampled_above_Tx0;
      else throw ParseError(fmt::format("unknown x0 policy '{}'", policy));
    }
  }
  const std::string expected = j.value("expected", std::string("unknown"));
  if (expected == "fixed_point_exists") s.expected = Expectation::fixed_point_exists;
  else if (expected == "no_fixed_point") s.expected = Expectation::no_fixed_point;
  else if (expected != "unknown") throw ParseError(fmt::format("unknown expectation '{}'", expected));

  if (j.contains("suites")) {
    for (const json& name : j.at("suites")) {
      for (Suite suite : parse_suites(name.get<std::string>())) {
        if (suite != Suite::t34) s.suites.push_back(suite);
      }
    }
  } else {
    s.suites = {Suite::t32};
  }
  return s;
}

}  // namespace

HarnessConfig harness_config_from_json_text(std::string_view text) {
  HarnessConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    if (j.contains("iteration")) {
      const json& it = j.at("iteration");
      read_opt(it, "max_iter", cfg.iteration.max_iter);
      read_opt(it, "residual_tol", cfg.iteration.residual_tol);
      read_opt(it, "bound_threshold", cfg.iteration.bound_threshold);
      read_opt(it, "window", cfg.iteration.window);
      cfg.iteration.validate();
    }
    read_opt(j, "samples", cfg.verify_samples);
    if (cfg.verify_samples < 1) throw ParseError("samples must be positive");
    if (j.contains("center")) {
      const json& c = j.at("center");
      read_opt(c, "max_iter", cfg.center.max_iter);
      read_opt(c, "tol", cfg.center.tol);
      read_opt(c, "step_scale", cfg.center.step_scale);
    }
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      read_opt(t, "fixed_point", cfg.center_fixed_tol);
      read_opt(t, "feasibility", cfg.feasibility_tol);
      read_opt(t, "exact_match", cfg.exact_match_tol);
      read_opt(t, "convergence", cfg.convergence_tol);
      read_opt(t, "norm_monotone", cfg.norm_monotone_tol);
    }
    read_opt(j, "c46_samples", cfg.c46_samples);
    if (j.contains("t34")) {
      const json& t = j.at("t34");
      read_opt(t, "trials", cfg.t34.trials);
      read_opt(t, "dims", cfg.t34.dims);
      read_opt(t, "rhos", cfg.t34.rhos);
      read_opt(t, "unbounded_trials", cfg.t34.unbounded_trials);
      read_opt(t, "include_identity_zero", cfg.t34.include_identity_zero);
      read_opt(t, "budget_multiplier", cfg.t34.budget_multiplier);
      if (cfg.t34.trials < 0 || cfg.t34.unbounded_trials < 0) throw ParseError("t34 trial counts must be >= 0");
      for (int d : cfg.t34.dims) {
        if (d < 1) throw ParseError("t34 dims must be positive");
      }
    }
    read_opt(j, "include_builtin", cfg.include_builtin);
    if (j.contains("scenarios")) {
      for (const json& s : j.at("scenarios")) cfg.scenarios.push_back(scenario_from_json(s));
    }
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("config: {}", e.what()));
  } catch (const PreconditionError& e) {
    throw ParseError(fmt::format("config: {}", e.what()));
  }
  return cfg;
}

HarnessConfig load_harness_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot read config {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return harness_config_from_json_text(buf.str());
}

}  // namespace ordfix
