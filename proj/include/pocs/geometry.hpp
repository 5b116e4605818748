#ifndef POCS_GEOMETRY_HPP
#define POCS_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "pocs/types.hpp"

namespace pocs::geometry {

/// Membership slack used by `contains`.
inline constexpr double kSetTolerance = 1e-12;

struct Singleton {
  Point center;
};

struct Ball {
  Point center;
  double radius = 1.0;
};

/// {y : normal . y <= offset}
struct HalfSpace {
  Point normal;
  double offset = 0.0;
};

struct Box {
  Point lower;
  Point upper;
};

using ConvexSet = std::variant<Singleton, Ball, HalfSpace, Box>;

// Validating constructors; each throws ContractError on a degenerate set.
ConvexSet make_singleton(Point center);
ConvexSet make_ball(Point center, double radius);
ConvexSet make_half_space(Point normal, double offset);
ConvexSet make_box(Point lower, Point upper);

std::size_t dimension(const ConvexSet& set) noexcept;

/// Nearest point of `set` to `x` in the Euclidean norm.
Point project(const ConvexSet& set, std::span<const double> x);

bool contains(const ConvexSet& set, std::span<const double> y, double tol = kSetTolerance);

struct PocsOptions {
  std::size_t max_iter = 10'000;
  double tol = 1e-9;
};

struct PocsTrace {
  std::vector<Point> iterates;  // starts with x0
  bool converged = false;
  bool cycle_detected = false;
  std::size_t projections = 0;  // projection steps taken, not counting the final membership check

  const Point& final_point() const { return iterates.back(); }
};

/// Sequential projections onto `sets` in order. `iterates` records every
/// projection. After each sweep the sweep-end point is converged if no set
/// moves it by more than tol; if instead it matches one of the previous 8
/// sweep ends within tol while the sweep still moves it, the trace is a
/// limit cycle.
PocsTrace alternating_pocs(std::span<const ConvexSet> sets, Point x0, const PocsOptions& options = {});

/// Weighted simultaneous projections x <- x + sum_i w_i (P_i(x) - x).
/// Weights must be non-negative and sum to one within 1e-9.
PocsTrace parallel_pocs(std::span<const ConvexSet> sets, std::span<const double> weights, Point x0,
                        const PocsOptions& options = {});

/// sum_i w_i ||x - P_i(x)||^2, the quantity parallel POCS minimizes.
double weighted_squared_distance(std::span<const ConvexSet> sets, std::span<const double> weights,
                                 std::span<const double> x);

}  // namespace pocs::geometry

#endif  // POCS_GEOMETRY_HPP
