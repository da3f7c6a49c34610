#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ordfix::cli {

struct ModulusArgs {
  double p = 2.0;
  int eps_grid = 21;
  int dim = 2;
  std::string out;
};

struct OrderCheckArgs {
  std::string cone = "orthant";
  int dim = 2;
  double p = 2.0;
  int samples = 1000;
  std::uint64_t seed = 0;
};

struct CheckMappingArgs {
  std::string map;
  std::string cone = "orthant";
  double p = 2.0;
  double alpha = 0.0;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::string json;
};

struct IterateArgs {
  std::string map;
  std::string x0 = "zero";
  std::string scheme = "picard";
  std::string beta = "0.5";
  std::string cone = "orthant";
  double p = 2.0;
  int max_iter = 100'000;
  double tol = 1e-10;
  double bound_threshold = 1e8;
  std::string out;
};

struct AsymCenterArgs {
  std::string orbit;
  std::optional<std::size_t> tail_from;
  std::string cone = "orthant";
  double p = 2.0;
  std::string map;
  std::string out;
};

struct VerifyArgs {
  std::string suite = "all";
  std::string config;
  std::uint64_t seed = 0;
  std::string out = "verify_out";
};

// Each returns the process exit code.
int run_modulus(const ModulusArgs& args);
int run_order_check(const OrderCheckArgs& args);
int run_check_mapping(const CheckMappingArgs& args);
int run_iterate(const IterateArgs& args);
int run_asym_center(const AsymCenterArgs& args);
int run_verify(const VerifyArgs& args);

}  // namespace ordfix::cli
