#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace ordfix {

/// A point of the ambient space. Dense, real, dimension = size().
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Absolute slack used for cone membership.
inline constexpr double kConeTolerance = 1e-12;
/// Slack used when comparing the two sides of a norm inequality.
inline constexpr double kInequalityAbsTolerance = 1e-9;
inline constexpr double kInequalityRelTolerance = 1e-9;
/// Residual below which ||Tx - x|| counts as a fixed point.
inline constexpr double kFixedPointTolerance = 1e-8;

/// lhs <= rhs up to kInequalityAbsTolerance + kInequalityRelTolerance * |rhs|.
inline bool inequality_holds(double lhs, double rhs) {
  return lhs <= rhs + kInequalityAbsTolerance + kInequalityRelTolerance * (rhs < 0 ? -rhs : rhs);
}

Vector make_vector(std::initializer_list<double> coords);

/// Throws DimensionMismatch unless x.size() == dim.
void require_dim(const Vector& x, std::ptrdiff_t dim, std::string_view what);
/// Throws NonFiniteValue if any coordinate is NaN or infinite.
void require_finite(const Vector& x, std::string_view what);

/// "(1, 2.5, -3)" with up to 17 significant digits.
std::string to_string(const Vector& x);

}  // namespace ordfix
