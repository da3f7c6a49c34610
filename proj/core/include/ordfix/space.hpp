#pragma once

// Finite-dimensional l^p spaces, 1 < p < infinity, and their convexity
// geometry: the modulus of convexity, the characteristic of convexity and
// the uniform-convexity inequality it controls.

#include <vector>

#include "ordfix/vector.hpp"

namespace ordfix {

/// Descriptor of l^p^dim. Construction rejects p outside (1, inf) so every
/// SpaceSpec is uniformly convex.
class SpaceSpec {
 public:
  SpaceSpec(int dim, double p);

  int dim() const { return dim_; }
  double p() const { return p_; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  int dim_;
  double p_;
};

/// (sum |x_i|^p)^(1/p), evaluated with max-scaling so large or tiny
/// coordinates do not overflow.
double norm(const SpaceSpec& space, const Vector& x);
/// norm(space, x - y)
double distance(const SpaceSpec& space, const Vector& x, const Vector& y);

/// Knobs of the nested solver behind modulus_of_convexity.
///
/// The infimum is taken over pairs on the unit sphere of a two-dimensional
/// coordinate section with ||x - y|| = eps (the constraint is active at the
/// optimum). The sphere is parametrized by angle; for each starting angle the
/// partner point is found by a bracketing root solve, and the starting angle
/// is optimized by a coarse grid followed by Brent refinement. Rotations by
/// pi/2 are isometries of l^p^2, so only [0, pi/2) is searched.
struct ModulusSolverConfig {
  int angle_grid = 48;        ///< coarse samples of the starting angle
  int refine_bits = 40;       ///< Brent precision (bits) in the angle
  int root_max_iter = 100;    ///< cap on the partner-point root solve
  double root_tolerance = 1e-12;  ///< |distance - eps| accepted from the root solve
};

/// delta_E(eps) = inf{1 - ||x+y||/2 : ||x||,||y|| <= 1, ||x-y|| >= eps}.
/// Throws PreconditionError when eps is outside [0, 2] and SolverError when
/// the inner root solve does not reach root_tolerance.
double modulus_of_convexity(const SpaceSpec& space, double eps,
                            const ModulusSolverConfig& cfg = {});

struct ProfileConfig {
  int grid_points = 201;  ///< uniform grid over [0, 2], endpoints included
  ModulusSolverConfig solver{};
};

/// delta_E sampled on a uniform grid plus the characteristic of convexity.
struct ConvexityProfile {
  std::vector<double> epsilons;
  std::vector<double> deltas;
  double eps0 = 0.0;           ///< largest grid eps with delta <= zero_tolerance
  double zero_tolerance = 0.0; ///< 10x the rounding floor of 1 - ||x+y||/2
};

/// Rounding floor of the delta evaluation near delta = 0.
double modulus_noise_floor();

ConvexityProfile convexity_profile(const SpaceSpec& space, const ProfileConfig& cfg = {});

/// eps_0(E) = sup{eps : delta_E(eps) = 0}, estimated on the profile grid.
/// Throws PreconditionError for a grid with fewer than two points.
double characteristic_of_convexity(const SpaceSpec& space, const ProfileConfig& cfg = {});

/// Both sides of
///   ||lambda x + (1-lambda) y|| <= r [1 - 2 min(lambda, 1-lambda) delta(||x-y||/r)].
struct ConvexityInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
  bool holds = false;
};

/// Evaluates the uniform-convexity bound for ||x||, ||y|| <= r. Throws
/// PreconditionError naming the failing bound if r <= 0, lambda is outside
/// [0, 1], or either norm exceeds r.
ConvexityInequality convexity_inequality(const SpaceSpec& space, const Vector& x, const Vector& y,
                                         double lambda, double r,
                                         const ModulusSolverConfig& cfg = {});

inline bool check_convexity_inequality(const SpaceSpec& space, const Vector& x, const Vector& y,
                                       double lambda, double r,
                                       const ModulusSolverConfig& cfg = {}) {
  return convexity_inequality(space, x, y, lambda, r, cfg).holds;
}

}  // namespace ordfix
