#include "ordfix/iterate.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

void IterationConfig::validate() const {
  if (max_iter < 1) throw PreconditionError("IterationConfig: max_iter must be >= 1");
  if (!(residual_tol > 0.0)) throw PreconditionError("IterationConfig: residual_tol must be positive");
  if (!(bound_threshold > 0.0)) throw PreconditionError("IterationConfig: bound_threshold must be positive");
  if (window < 1) throw PreconditionError("IterationConfig: window must be >= 1");
}

std::string_view to_string(OrderTrend trend) {
  switch (trend) {
    case OrderTrend::increasing:
      return "increasing";
    case OrderTrend::decreasing:
      return "decreasing";
    case OrderTrend::stationary:
      return "stationary";
    case OrderTrend::neither:
      return "neither";
  }
  return "unknown";
}

std::string_view to_string(OrbitVerdict verdict) {
  switch (verdict) {
    case OrbitVerdict::converged:
      return "converged";
    case OrbitVerdict::unbounded_suspected:
      return "unbounded_suspected";
    case OrbitVerdict::max_iter_reached:
      return "max_iter_reached";
  }
  return "unknown";
}

namespace {

OrderTrend trend_of(bool up, bool down) {
  if (up && down) return OrderTrend::stationary;
  if (up) return OrderTrend::increasing;
  if (down) return OrderTrend::decreasing;
  return OrderTrend::neither;
}

bool growth_sustained(const std::vector<double>& norms, const IterationConfig& cfg) {
  const std::size_t w = static_cast<std::size_t>(cfg.window);
  if (norms.size() <= w || norms.back() <= cfg.bound_threshold) return false;
  return (norms.back() - norms[norms.size() - 1 - w]) / static_cast<double>(w) > 0.0;
}

// Shared loop. `step(n, x, tx)` returns the next iterate.
template <typename Step>
OrbitRecord run_orbit(const MappingSpec& map, const Vector& x0, const ConeSpec& cone, const SpaceSpec& space,
                      const IterationConfig& cfg, Step&& step) {
  cfg.validate();
  require_dim(x0, map.dim(), "orbit x0");
  require_finite(x0, "orbit x0");
  if (!in_domain(map, x0)) {
    throw DomainError(fmt::format("orbit: x0 = {} lies outside the domain of the map", to_string(x0)));
  }
  OrbitRecord rec;
  bool all_up = true;
  bool all_down = true;
  Vector x = x0;
  for (std::size_t n = 0;; ++n) {
    const Vector tx = apply(map, x);
    Vector next = step(n, x, tx);
    const bool up = leq(cone, x, next);
    const bool down = leq(cone, next, x);
    const double residual = distance(space, tx, x);
    rec.residuals.push_back(residual);
    rec.norms.push_back(norm(space, x));
    rec.leq_up.push_back(up);
    rec.leq_down.push_back(down);
    rec.points.push_back(x);
    if (residual <= cfg.residual_tol) {
      rec.verdict = OrbitVerdict::converged;
      break;
    }
    all_up = all_up && up;
    all_down = all_down && down;
    if (growth_sustained(rec.norms, cfg)) {
      rec.verdict = OrbitVerdict::unbounded_suspected;
      break;
    }
    if (rec.points.size() >= static_cast<std::size_t>(cfg.max_iter)) {
      rec.verdict = OrbitVerdict::max_iter_reached;
      break;
    }
    if (!in_domain(map, next)) {
      throw DomainError(fmt::format("orbit: iterate {} = {} escaped the domain", n + 1, to_string(next)));
    }
    x = std::move(next);
  }
  // The step out of a converged point is not part of the chain.
  if (rec.verdict != OrbitVerdict::converged) {
    all_up = all_up && rec.leq_up.back();
    all_down = all_down && rec.leq_down.back();
  }
  rec.order_monotone = trend_of(all_up, all_down);
  return rec;
}

}  // namespace

OrbitRecord picard_orbit(const MappingSpec& map, const Vector& x0, const ConeSpec& cone, const SpaceSpec& space,
                         const IterationConfig& cfg) {
  return run_orbit(map, x0, cone, space, cfg, [](std::size_t, const Vector&, const Vector& tx) { return tx; });
}

BetaSchedule constant_beta(double beta) {
  return [beta](std::size_t) { return beta; };
}

BetaSchedule parse_beta_schedule(std::string_view text) {
  if (text == "harmonic") {
    return [](std::size_t n) { return 1.0 / static_cast<double>(n + 2); };
  }
  std::string_view number = text;
  if (number.starts_with("const:")) number.remove_prefix(6);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || ptr != number.data() + number.size()) {
    throw ParseError(fmt::format("beta schedule '{}': expected a number, const:<b> or harmonic", text));
  }
  return constant_beta(value);
}

OrbitRecord mann_orbit(const MappingSpec& map, const Vector& x0, const BetaSchedule& beta, const ConeSpec& cone,
                       const SpaceSpec& space, const IterationConfig& cfg) {
  return run_orbit(map, x0, cone, space, cfg, [&beta](std::size_t n, const Vector& x, const Vector& tx) -> Vector {
    const double b = beta(n);
    if (!(b >= 0.0 && b <= 1.0)) {
      throw PreconditionError(fmt::format("mann_orbit: beta_{} = {} is outside [0, 1]", n, b));
    }
    if (b == 0.0) return tx;
    if (b == 1.0) return x;
    return b * x + (1.0 - b) * tx;
  });
}

OrderTrend MonotoneCheck::trend() const { return trend_of(increasing, decreasing); }

MonotoneCheck check_orbit_monotone(const OrbitRecord& record, const ConeSpec& cone) {
  if (record.points.empty()) throw PreconditionError("check_orbit_monotone: empty record");
  MonotoneCheck out{true, true, std::nullopt};
  const auto& pts = record.points;
  if (pts.size() < 2) return out;
  for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
    out.increasing = out.increasing && leq(cone, pts[n], pts[n + 1]);
    out.decreasing = out.decreasing && leq(cone, pts[n + 1], pts[n]);
  }
  const bool start_up = leq(cone, pts[0], pts[1]);
  const bool start_down = leq(cone, pts[1], pts[0]);
  if (!start_up && !start_down) {
    out.first_violation = 0;
    return out;
  }
  for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
    const bool ok = start_up ? leq(cone, pts[n], pts[n + 1]) : leq(cone, pts[n + 1], pts[n]);
    if (!ok) {
      out.first_violation = n;
      break;
    }
  }
  return out;
}

Vector monotone_limit(const OrbitRecord& record, const ConeSpec& cone) {
  if (record.verdict == OrbitVerdict::unbounded_suspected) {
    throw PreconditionError("monotone_limit: orbit is flagged unbounded");
  }
  const MonotoneCheck chain = check_orbit_monotone(record, cone);
  if (!chain.increasing && !chain.decreasing) {
    throw PreconditionError("monotone_limit: orbit is not monotone");
  }
  const Vector& limit = record.last();
  constexpr double bound_tol = 1e-9;
  for (std::size_t n = 0; n < record.points.size(); ++n) {
    const bool ok = chain.increasing ? leq(cone, record.points[n], limit, bound_tol)
                                     : leq(cone, limit, record.points[n], bound_tol);
    if (!ok) throw Error(fmt::format("monotone_limit: point {} violates the order bound against the limit", n));
  }
  return limit;
}

void write_orbit_csv(std::ostream& out, const OrbitRecord& record) {
  const Eigen::Index dim = record.points.empty() ? 0 : record.points.front().size();
  out << "n";
  for (Eigen::Index i = 0; i < dim; ++i) out << ",x" << (i + 1);
  out << ",residual,norm,leq_up,leq_down\n";
  for (std::size_t n = 0; n < record.points.size(); ++n) {
    out << n;
    for (Eigen::Index i = 0; i < dim; ++i) out << fmt::format(",{:.17g}", record.points[n][i]);
    out << fmt::format(",{:.17g},{:.17g},{},{}\n", record.residuals[n], record.norms[n],
                       record.leq_up[n] ? 1 : 0, record.leq_down[n] ? 1 : 0);
  }
}

std::vector<Vector> read_orbit_points(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("orbit CSV: empty input");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  std::vector<std::size_t> coord_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].size() > 1 && header[c][0] == 'x') coord_cols.push_back(c);
  }
  if (coord_cols.empty()) throw ParseError("orbit CSV: no coordinate columns (x1, x2, ...)");
  std::vector<Vector> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw ParseError(fmt::format("orbit CSV line {}: wrong column count", line_no));
    Vector x(static_cast<Eigen::Index>(coord_cols.size()));
    for (std::size_t i = 0; i < coord_cols.size(); ++i) {
      const std::string& s = cells[coord_cols[i]];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(fmt::format("orbit CSV line {}: bad number '{}'", line_no, s));
      }
      x[static_cast<Eigen::Index>(i)] = v;
    }
    points.push_back(std::move(x));
  }
  if (points.empty()) throw ParseError("orbit CSV: no rows");
  return points;
}

}  // namespace ordfix
