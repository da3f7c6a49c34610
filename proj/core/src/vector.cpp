#include "ordfix/vector.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

void require_dim(const Vector& x, std::ptrdiff_t dim, std::string_view what) {
  if (x.size() != dim) {
    throw DimensionMismatch(fmt::format("{}: expected dimension {}, got {}", what, dim, x.size()));
  }
}

void require_finite(const Vector& x, std::string_view what) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw NonFiniteValue(fmt::format("{}: coordinate {} is not finite", what, i));
    }
  }
}

std::string to_string(const Vector& x) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{:.17g}", x[i]);
  }
  out += ")";
  return out;
}

}  // namespace ordfix
