#pragma once

// Picard and Mann orbits with order tracking, boundedness heuristics and
// convergence detection.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ordfix/mapping.hpp"
#include "ordfix/order.hpp"
#include "ordfix/space.hpp"

namespace ordfix {

struct IterationConfig {
  int max_iter = 100'000;
  double residual_tol = 1e-10;
  double bound_threshold = 1e8;  ///< norm ceiling for unbounded_suspected
  int window = 50;               ///< trailing window for growth detection

  /// Throws PreconditionError on non-positive fields.
  void validate() const;
};

enum class OrderTrend { increasing, decreasing, stationary, neither };
enum class OrbitVerdict { converged, unbounded_suspected, max_iter_reached };

std::string_view to_string(OrderTrend trend);
std::string_view to_string(OrbitVerdict verdict);

/// One orbit. Entry n describes x_n; leq_up[n] / leq_down[n] compare x_n
/// with the next iterate (T x_n for Picard, which is points[n+1] whenever
/// that point was recorded).
struct OrbitRecord {
  std::vector<Vector> points;
  std::vector<double> residuals;  ///< ||T x_n - x_n||
  std::vector<double> norms;      ///< ||x_n||
  std::vector<char> leq_up;       ///< x_n <= x_{n+1}
  std::vector<char> leq_down;     ///< x_{n+1} <= x_n
  OrderTrend order_monotone = OrderTrend::neither;
  OrbitVerdict verdict = OrbitVerdict::max_iter_reached;

  const Vector& last() const { return points.back(); }
  bool bounded() const { return verdict == OrbitVerdict::converged; }
};

/// x_{n+1} = T x_n until ||T x_n - x_n|| <= residual_tol, the norm exceeds
/// bound_threshold with positive mean growth over the trailing window, or
/// max_iter points are recorded. Throws DomainError if x0 lies outside the
/// domain or an iterate escapes it.
OrbitRecord picard_orbit(const MappingSpec& map, const Vector& x0, const ConeSpec& cone, const SpaceSpec& space,
                         const IterationConfig& cfg = {});

using BetaSchedule = std::function<double(std::size_t n)>;

BetaSchedule constant_beta(double beta);
/// "0.5", "const:0.5" or "harmonic" (beta_n = 1/(n+2)). Throws ParseError.
BetaSchedule parse_beta_schedule(std::string_view text);

/// x_{n+1} = beta_n x_n + (1 - beta_n) T x_n. beta_n = 0 reproduces
/// picard_orbit bit for bit. Throws PreconditionError when some beta_n is
/// outside [0, 1].
OrbitRecord mann_orbit(const MappingSpec& map, const Vector& x0, const BetaSchedule& beta, const ConeSpec& cone,
                       const SpaceSpec& space, const IterationConfig& cfg = {});

struct MonotoneCheck {
  bool increasing = false;
  bool decreasing = false;
  /// First n where the chain started by (x_0, x_1) breaks; 0 when x_0 and
  /// x_1 are incomparable.
  std::optional<std::size_t> first_violation;

  OrderTrend trend() const;
};

/// Recomputes the order chain between consecutive recorded points.
MonotoneCheck check_orbit_monotone(const OrbitRecord& record, const ConeSpec& cone);

/// Norm limit of a monotone, non-unbounded orbit (its last point), after
/// asserting every recorded point is <= (increasing) or >= (decreasing) the
/// limit within 1e-9. Throws PreconditionError for non-monotone or
/// unbounded records.
Vector monotone_limit(const OrbitRecord& record, const ConeSpec& cone);

/// CSV with header n,x1..xd,residual,norm,leq_up,leq_down.
void write_orbit_csv(std::ostream& out, const OrbitRecord& record);
/// Points of an orbit CSV written by write_orbit_csv. Throws ParseError.
std::vector<Vector> read_orbit_points(std::istream& in);

}  // namespace ordfix
