#pragma once

// Asymptotic center of a monotone orbit tail over the order-constrained set
// C = {y : x_n <= y for all n} (increasing tails) or {y : y <= x_n} for
// decreasing tails, together with the fixed-point check on the minimizer.
//
// limsup_n ||x_n - y|| is replaced by max over a finite tail. For an
// increasing tail under the orthant, C collapses to {y : y >= sup tail}.

#include <span>
#include <vector>

#include "ordfix/iterate.hpp"
#include "ordfix/mapping.hpp"
#include "ordfix/order.hpp"
#include "ordfix/space.hpp"

namespace ordfix {

enum class TailDirection { increasing, decreasing };

struct AsymCenterProblem {
  std::vector<Vector> tail;
  ConeSpec cone;
  SpaceSpec space;
  TailDirection direction = TailDirection::increasing;
  /// sup of the tail (increasing) or inf of the tail (decreasing).
  Vector bound;
};

/// Builds the problem from tail points. Throws PreconditionError for an
/// empty or non-finite tail and UnsupportedOperation for non-orthant cones.
AsymCenterProblem make_asym_center_problem(std::vector<Vector> tail, const ConeSpec& cone, const SpaceSpec& space,
                                           TailDirection direction = TailDirection::increasing);

/// Tail of a recorded orbit starting at index `from` (default: the second
/// half). Direction follows the orbit's order trend.
AsymCenterProblem asym_center_problem_from_orbit(const OrbitRecord& record, const ConeSpec& cone,
                                                 const SpaceSpec& space, std::optional<std::size_t> from = {});

/// max_n ||x_n - y|| over the tail (an upper surrogate of the limsup).
double asymptotic_radius(const AsymCenterProblem& problem, const Vector& y);

struct AsymCenterConfig {
  int max_iter = 5000;
  double tol = 1e-6;        ///< accepted gap between best value and certified lower bound
  double step_scale = 0.0;  ///< c in c/sqrt(k); 0 picks the tail diameter
  bool use_order_bound = true;  ///< allow the monotonic-norm lower bound f(y) >= f(bound)
};

struct AsymCenterResult {
  Vector z;
  double r = 0.0;              ///< objective at z
  int iterations = 0;
  double fixed_point_residual = -1.0;  ///< ||Tz - z||; filled by attach_fixed_point_residual
  double lower_bound = 0.0;    ///< certified lower bound on inf over C
  double subgradient_bound = 0.0;  ///< lower bound from the step-size certificate alone
  bool certified = false;      ///< r - lower_bound <= tol
};

/// Projected subgradient method on max_n ||x_n - y|| subject to y in C,
/// started from the bound, step c/sqrt(k), returning the best iterate.
///
/// Lower bounds: the standard step-size certificate
///   f_best - (R^2 + G^2 sum a_k^2) / (2 sum a_k),
/// with R = 2 kappa f(y_0) (every minimizer lies within 2 f(y_0) of y_0) and
/// G the Euclidean size of a dual-norm unit vector, and, since l^p norms are
/// monotonic on the orthant, the exact bound f(y) >= f(bound) on C. Throws
/// SolverError when neither certificate closes the gap to tol.
AsymCenterResult solve_asym_center(const AsymCenterProblem& problem, const AsymCenterConfig& cfg = {});

/// Sets result.fixed_point_residual = ||Tz - z||.
void attach_fixed_point_residual(const MappingSpec& map, const SpaceSpec& space, AsymCenterResult& result);

/// ||Tz - z|| <= tol.
bool verify_center_is_fixed(const MappingSpec& map, const SpaceSpec& space, const AsymCenterResult& result,
                            double tol);

}  // namespace ordfix
