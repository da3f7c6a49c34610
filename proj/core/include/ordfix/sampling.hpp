#pragma once

#include <cstdint>
#include <random>

#include "ordfix/vector.hpp"

namespace ordfix {

/// splitmix64 mix of (base, stream); used to derive per-trial seeds so that
/// trials are reproducible independently of execution order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Seeded generator shared by every sampler in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  Vector uniform_box(const Vector& lo, const Vector& hi);
  Vector uniform_cube(int dim, double lo, double hi);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordfix
