#include "commands.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ordfix/asymcenter.hpp"
#include "ordfix/error.hpp"
#include "ordfix/harness.hpp"
#include "ordfix/iterate.hpp"
#include "ordfix/mapping_io.hpp"
#include "ordfix/order.hpp"
#include "ordfix/sampling.hpp"
#include "ordfix/space.hpp"
#include "ordfix/verify.hpp"

namespace ordfix::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path));
  return out;
}

std::string vec(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += fmt::format("{}{:.10g}", i ? ", " : "", v[i]);
  return "(" + out + ")";
}

Vector parse_point(const std::string& text, int dim) {
  if (text == "zero") return Vector::Zero(dim);
  std::vector<double> coords;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) throw ParseError(fmt::format("bad coordinate '{}'", cell));
    coords.push_back(v);
  }
  Vector x = Eigen::Map<Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
  require_dim(x, dim, "--x0");
  return x;
}

std::string verdict(bool passed) { return passed ? "pass" : "FAIL"; }

}  // namespace

int run_modulus(const ModulusArgs& args) {
  const SpaceSpec space(args.dim, args.p);
  const ConvexityProfile profile = convexity_profile(space, {.grid_points = args.eps_grid, .solver = {}});
  std::ofstream file;
  if (!args.out.empty()) file = open_out(args.out);
  std::ostream& out = args.out.empty() ? std::cout : file;
  out << "epsilon,delta\n";
  for (std::size_t i = 0; i < profile.epsilons.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g}\n", profile.epsilons[i], profile.deltas[i]);
  }
  spdlog::info("characteristic of convexity estimate {:.6g}", profile.eps0);
  return 0;
}

int run_order_check(const OrderCheckArgs& args) {
  const ConeSpec cone(parse_cone_kind(args.cone), args.dim);
  const SpaceSpec space(args.dim, args.p);
  const double gamma = normality_constant_estimate(cone, space, args.samples, derive_seed(args.seed, 1));
  const NormMonotonicityReport mono = is_norm_monotonic(cone, space, args.samples, derive_seed(args.seed, 2));

  std::cout << fmt::format("{:<18} {}\n", "cone", to_string(cone.kind()));
  std::cout << fmt::format("{:<18} {}\n", "dim", args.dim);
  std::cout << fmt::format("{:<18} {}\n", "p", args.p);
  std::cout << fmt::format("{:<18} {}\n", "samples", args.samples);
  std::cout << fmt::format("{:<18} {:.6f}\n", "normality_est", gamma);
  std::cout << fmt::format("{:<18} {}\n", "monotonic_norm", verdict(mono.passed));
  if (mono.witness) {
    std::cout << fmt::format("{:<18} x={} y={} ||x||={:.6g} ||y||={:.6g}\n", "  witness", vec(mono.witness->x),
                             vec(mono.witness->y), mono.witness->norm_x, mono.witness->norm_y);
  }
  if (cone.is_minihedral()) {
    const LatticeReport lat = check_lattice_axioms(cone, args.samples, derive_seed(args.seed, 3));
    std::cout << fmt::format("{:<18} {}\n", "lattice", verdict(lat.passed()));
    std::cout << fmt::format("{:<18} {}\n", "  idempotence", lat.idempotence_failures);
    std::cout << fmt::format("{:<18} {}\n", "  commutativity", lat.commutativity_failures);
    std::cout << fmt::format("{:<18} {}\n", "  absorption", lat.absorption_failures);
    std::cout << fmt::format("{:<18} {}\n", "  bounds", lat.upper_bound_failures);
  } else {
    std::cout << fmt::format("{:<18} {}\n", "lattice", "n/a (cone is not minihedral)");
  }
  return 0;
}

int run_check_mapping(const CheckMappingArgs& args) {
  const MappingSpec map = load_mapping(args.map);
  const ConeSpec cone(parse_cone_kind(args.cone), map.dim());
  const SpaceSpec space(map.dim(), args.p);
  const SamplerConfig sampler{.samples = args.samples, .seed = args.seed, .scale = 4.0};

  std::vector<PropertyReport> reports;
  reports.push_back(is_monotone(map, cone, sampler));
  reports.push_back(is_monotone_nonexpansive(map, cone, space, sampler));
  reports.push_back(is_alpha_nonexpansive(map, cone, space, args.alpha, sampler));
  if (args.p == 2.0) {
    for (PropertyReport& r : classify_hilbert_variants(map, space, sampler)) reports.push_back(std::move(r));
  }

  std::cout << fmt::format("map: {} (dim {}, domain {})\n", map.variant_name(), map.dim(),
                           to_string(map.domain().kind));
  std::cout << fmt::format("{:<44} {:>8} {:>10}  {}\n", "property", "pairs", "violations", "verdict");
  for (const PropertyReport& r : reports) {
    const std::string name = r.alpha ? fmt::format("{} (alpha={:.6g})", r.property, *r.alpha) : r.property;
    std::cout << fmt::format("{:<44} {:>8} {:>10}  {}\n", name, r.samples_tested, r.violations.size(),
                             verdict(r.passed()));
    if (!r.passed()) {
      const Violation& v = r.violations.front();
      std::cout << fmt::format("  witness ({}): x={} y={} lhs={:.10g} rhs={:.10g}\n", v.kind, vec(v.x), vec(v.y),
                               v.lhs, v.rhs);
    }
  }

  if (!args.json.empty()) {
    nlohmann::json j;
    j["map"] = std::string(map.variant_name());
    j["dim"] = map.dim();
    j["cone"] = args.cone;
    j["p"] = args.p;
    j["seed"] = args.seed;
    j["properties"] = nlohmann::json::array();
    for (const PropertyReport& r : reports) {
      nlohmann::json e{{"property", r.property},
                       {"samples", r.samples_tested},
                       {"violations", r.violations.size()},
                       {"passed", r.passed()}};
      if (r.alpha) e["alpha"] = *r.alpha;
      if (!r.passed()) {
        const Violation& v = r.violations.front();
        e["witness"] = {{"kind", v.kind},
                        {"x", std::vector<double>(v.x.data(), v.x.data() + v.x.size())},
                        {"y", std::vector<double>(v.y.data(), v.y.data() + v.y.size())},
                        {"lhs", v.lhs},
                        {"rhs", v.rhs}};
      }
      j["properties"].push_back(std::move(e));
    }
    open_out(args.json) << j.dump(2) << '\n';
  }
  return 0;
}

int run_iterate(const IterateArgs& args) {
  const MappingSpec map = load_mapping(args.map);
  const ConeSpec cone(parse_cone_kind(args.cone), map.dim());
  const SpaceSpec space(map.dim(), args.p);
  const IterationConfig cfg{args.max_iter, args.tol, args.bound_threshold, 50};
  const Vector x0 = parse_point(args.x0, map.dim());
  const OrbitRecord orbit = args.scheme == "picard"
                                ? picard_orbit(map, x0, cone, space, cfg)
                                : mann_orbit(map, x0, parse_beta_schedule(args.beta), cone, space, cfg);
  auto out = open_out(args.out);
  write_orbit_csv(out, orbit);
  std::cout << fmt::format("points {}  verdict {}  order {}  last {}\n", orbit.points.size(), to_string(orbit.verdict),
                           to_string(orbit.order_monotone), vec(orbit.last()));
  return 0;
}

int run_asym_center(const AsymCenterArgs& args) {
  std::ifstream in(args.orbit);
  if (!in) throw Error(fmt::format("cannot read {}", args.orbit));
  OrbitRecord record;
  record.points = read_orbit_points(in);
  if (record.points.empty()) throw ParseError("orbit CSV has no points");
  const int dim = static_cast<int>(record.points.front().size());
  const ConeSpec cone(parse_cone_kind(args.cone), dim);
  const SpaceSpec space(dim, args.p);
  const AsymCenterProblem problem = asym_center_problem_from_orbit(record, cone, space, args.tail_from);
  AsymCenterResult result = solve_asym_center(problem);
  if (!args.map.empty()) attach_fixed_point_residual(load_mapping(args.map), space, result);

  std::string report;
  report += fmt::format("{:<20} {}\n", "tail_points", problem.tail.size());
  report += fmt::format("{:<20} {}\n", "direction",
                        problem.direction == TailDirection::increasing ? "increasing" : "decreasing");
  report += fmt::format("{:<20} {}\n", "bound", vec(problem.bound));
  report += fmt::format("{:<20} {}\n", "z", vec(result.z));
  report += fmt::format("{:<20} {:.10g}\n", "radius", result.r);
  report += fmt::format("{:<20} {:.10g}\n", "lower_bound", result.lower_bound);
  report += fmt::format("{:<20} {}\n", "iterations", result.iterations);
  report += fmt::format("{:<20} {}\n", "certified", result.certified ? "yes" : "no");
  if (result.fixed_point_residual >= 0.0) {
    report += fmt::format("{:<20} {:.3g}\n", "fixed_point_resid", result.fixed_point_residual);
  }
  if (args.out.empty()) {
    std::cout << report;
  } else {
    open_out(args.out) << report;
  }
  return 0;
}

int run_verify(const VerifyArgs& args) {
  const HarnessConfig cfg = args.config.empty() ? HarnessConfig{} : load_harness_config(args.config);
  const std::vector<Suite> suites = parse_suites(args.suite);
  spdlog::info("running suite {} with seed {}", args.suite, args.seed);
  const SuiteRun run = run_suites(suites, cfg, args.seed);
  write_suite_outputs(run, args.out);
  std::cout << format_summary_table(run);
  return run.passed() ? 0 : 1;
}

}  // namespace ordfix::cli
