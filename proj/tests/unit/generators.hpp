#pragma once

// Hand-rolled generators for property tests.

#include <random>

#include "ordfix/vector.hpp"

namespace gen {

inline ordfix::Vector uniform(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ordfix::Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

inline double scalar(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int integer(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Point of the Lorentz cone {x : x_last >= ||x_head||_2}.
inline ordfix::Vector lorentz(std::mt19937_64& rng, int dim, double scale) {
  ordfix::Vector v = uniform(rng, dim, -scale, scale);
  v[dim - 1] = v.head(dim - 1).norm() + scalar(rng, 0.0, scale);
  return v;
}

}  // namespace gen
