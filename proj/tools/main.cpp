#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

#include "commands.hpp"
#include "ordfix/error.hpp"

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("ordfix"));
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();

  using namespace ordfix::cli;
  CLI::App app{"Fixed points of monotone alpha-nonexpansive maps on ordered l^p spaces"};
  app.require_subcommand(1);

  ModulusArgs modulus;
  auto* mod = app.add_subcommand("modulus", "Modulus of convexity profile as CSV (epsilon,delta)");
  mod->add_option("--p", modulus.p, "Exponent p in (1, inf)")->required();
  mod->add_option("--eps-grid", modulus.eps_grid, "Number of epsilon grid points on [0, 2]")->required();
  mod->add_option("--dim", modulus.dim, "Dimension")->capture_default_str();
  mod->add_option("--out", modulus.out, "Output CSV (default: stdout)");

  OrderCheckArgs order;
  auto* ord = app.add_subcommand("order", "Cone diagnostics");
  ord->require_subcommand(1);
  auto* ord_check = ord->add_subcommand("check", "Normality, monotonic norm and lattice checks");
  ord_check->add_option("--cone", order.cone, "orthant or lorentz")->required();
  ord_check->add_option("--dim", order.dim, "Dimension")->required();
  ord_check->add_option("--samples", order.samples, "Sampled pairs")->capture_default_str();
  ord_check->add_option("--seed", order.seed, "RNG seed")->capture_default_str();
  ord_check->add_option("--p", order.p, "Exponent of the norm")->capture_default_str();

  CheckMappingArgs check;
  auto* chk = app.add_subcommand("check-mapping", "Sampled mapping-class verdicts for a mapping file");
  chk->add_option("--map", check.map, "Mapping JSON file")->required();
  chk->add_option("--cone", check.cone, "orthant or lorentz")->capture_default_str();
  chk->add_option("--p", check.p, "Exponent p")->capture_default_str();
  chk->add_option("--alpha", check.alpha, "alpha for the alpha-nonexpansive check (< 1)")->capture_default_str();
  chk->add_option("--samples", check.samples, "Sampled comparable pairs")->capture_default_str();
  chk->add_option("--seed", check.seed, "RNG seed")->capture_default_str();
  chk->add_option("--json", check.json, "Also write the report as JSON");

  IterateArgs iter;
  auto* it = app.add_subcommand("iterate", "Picard or Mann orbit as CSV");
  it->add_option("--map", iter.map, "Mapping JSON file")->required();
  it->add_option("--x0", iter.x0, "Start point: 'zero' or comma-separated coordinates")->capture_default_str();
  it->add_option("--scheme", iter.scheme, "picard or mann")->check(CLI::IsMember({"picard", "mann"}))->capture_default_str();
  it->add_option("--beta", iter.beta, "Mann schedule: 0.5, const:0.5 or harmonic")->capture_default_str();
  it->add_option("--cone", iter.cone, "orthant or lorentz")->capture_default_str();
  it->add_option("--p", iter.p, "Exponent p")->capture_default_str();
  it->add_option("--max-iter", iter.max_iter, "Iteration budget")->capture_default_str();
  it->add_option("--tol", iter.tol, "Residual tolerance")->capture_default_str();
  it->add_option("--bound-threshold", iter.bound_threshold, "Norm ceiling for the unbounded verdict")
      ->capture_default_str();
  it->add_option("--out", iter.out, "Output CSV")->required();

  AsymCenterArgs center;
  auto* ac = app.add_subcommand("asym-center", "Asymptotic center of an orbit tail");
  ac->add_option("--orbit", center.orbit, "Orbit CSV written by iterate")->required();
  ac->add_option("--tail-from", center.tail_from, "First tail index (default: second half)");
  ac->add_option("--cone", center.cone, "Cone of the order (orthant)")->capture_default_str();
  ac->add_option("--p", center.p, "Exponent p")->capture_default_str();
  ac->add_option("--map", center.map, "Mapping JSON file, to report ||Tz - z||");
  ac->add_option("--out", center.out, "Report file (default: stdout)");

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Verification campaigns over the scenario corpus");
  ver->add_option("--suite", verify.suite, "t32, t33, t34, t41-44, c45-46 or all")->capture_default_str();
  ver->add_option("--config", verify.config, "Campaign configuration JSON");
  ver->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
  ver->add_option("--out", verify.out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mod) return run_modulus(modulus);
    if (*ord_check) return run_order_check(order);
    if (*chk) return run_check_mapping(check);
    if (*it) return run_iterate(iter);
    if (*ac) return run_asym_center(center);
    if (*ver) return run_verify(verify);
  } catch (const ordfix::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
