#include "pocs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace pocs::geometry {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void check_dims(const ConvexSet& set, std::span<const double> x) {
  if (dimension(set) != x.size()) {
    throw ContractError("dimension mismatch: set has " + std::to_string(dimension(set)) + ", point has " +
                        std::to_string(x.size()));
  }
}

void check_all_dims(std::span<const ConvexSet> sets, std::span<const double> x) {
  if (sets.empty()) throw ContractError("POCS needs at least one set");
  for (const ConvexSet& s : sets) check_dims(s, x);
}

}  // namespace

ConvexSet make_singleton(Point center) {
  if (center.empty()) throw ContractError("singleton needs a non-empty point");
  return Singleton{std::move(center)};
}

ConvexSet make_ball(Point center, double radius) {
  if (center.empty()) throw ContractError("ball needs a non-empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ContractError("ball radius must be positive");
  return Ball{std::move(center), radius};
}

ConvexSet make_half_space(Point normal, double offset) {
  if (normal.empty() || dot(normal, normal) == 0.0) throw ContractError("half-space normal must be non-zero");
  return HalfSpace{std::move(normal), offset};
}

ConvexSet make_box(Point lower, Point upper) {
  if (lower.empty() || lower.size() != upper.size()) throw ContractError("box bounds must share a dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw ContractError("box lower bound exceeds upper bound");
  }
  return Box{std::move(lower), std::move(upper)};
}

std::size_t dimension(const ConvexSet& set) noexcept {
  return std::visit(overloaded{
                        [](const Singleton& s) { return s.center.size(); },
                        [](const Ball& b) { return b.center.size(); },
                        [](const HalfSpace& h) { return h.normal.size(); },
                        [](const Box& b) { return b.lower.size(); },
                    },
                    set);
}

Point project(const ConvexSet& set, std::span<const double> x) {
  check_dims(set, x);
  return std::visit(
      overloaded{
          [](const Singleton& s) { return s.center; },
          [&x](const Ball& b) {
            const double dist = distance(x, b.center);
            Point out(x.begin(), x.end());
            if (dist <= b.radius) return out;
            const double scale = b.radius / dist;
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.center[i] + scale * (x[i] - b.center[i]);
            return out;
          },
          [&x](const HalfSpace& h) {
            Point out(x.begin(), x.end());
            const double excess = dot(h.normal, x) - h.offset;
            if (excess <= 0.0) return out;
            const double step = excess / dot(h.normal, h.normal);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] -= step * h.normal[i];
            return out;
          },
          [&x](const Box& b) {
            Point out(x.begin(), x.end());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], b.lower[i], b.upper[i]);
            return out;
          },
      },
      set);
}

bool contains(const ConvexSet& set, std::span<const double> y, double tol) {
  check_dims(set, y);
  return std::visit(overloaded{
                        [&](const Singleton& s) { return max_abs_diff(s.center, y) <= tol; },
                        [&](const Ball& b) { return distance(y, b.center) <= b.radius * (1.0 + tol) + tol; },
                        [&](const HalfSpace& h) {
                          const double scale = std::sqrt(dot(h.normal, h.normal));
                          return (dot(h.normal, y) - h.offset) / scale <= tol * (1.0 + std::abs(h.offset) / scale);
                        },
                        [&](const Box& b) {
                          for (std::size_t i = 0; i < y.size(); ++i) {
                            const double slack = tol * (1.0 + std::max(std::abs(b.lower[i]), std::abs(b.upper[i])));
                            if (y[i] < b.lower[i] - slack || y[i] > b.upper[i] + slack) return false;
                          }
                          return true;
                        },
                    },
                    set);
}

PocsTrace alternating_pocs(std::span<const ConvexSet> sets, Point x0, const PocsOptions& options) {
  check_all_dims(sets, x0);
  constexpr std::size_t kCycleMemory = 8;

  PocsTrace trace;
  trace.iterates.push_back(x0);
  std::deque<Point> sweep_ends{x0};
  Point current = std::move(x0);

  for (std::size_t sweep = 0; sweep < options.max_iter; ++sweep) {
    double largest_step = 0.0;
    for (const ConvexSet& set : sets) {
      Point next = project(set, current);
      largest_step = std::max(largest_step, max_abs_diff(next, current));
      current = std::move(next);
      trace.iterates.push_back(current);
      ++trace.projections;
    }

    // Fixed point of every projection: inside the intersection.
    double worst_residual = 0.0;
    Point last_check;
    for (const ConvexSet& set : sets) {
      last_check = project(set, current);
      worst_residual = std::max(worst_residual, max_abs_diff(last_check, current));
    }
    if (worst_residual <= options.tol) {
      trace.iterates.push_back(std::move(last_check));
      trace.converged = true;
      return trace;
    }

    const bool repeats = std::any_of(sweep_ends.begin(), sweep_ends.end(), [&](const Point& earlier) {
      return max_abs_diff(earlier, current) <= options.tol;
    });
    if (repeats) {
      // A sweep that returns to where it started while still moving is a
      // limit cycle; a sweep whose moves have become negligible is a slow
      // approach to the intersection.
      if (largest_step <= std::sqrt(options.tol)) {
        trace.converged = true;
      } else {
        trace.cycle_detected = true;
      }
      return trace;
    }
    sweep_ends.push_back(current);
    if (sweep_ends.size() > kCycleMemory) sweep_ends.pop_front();
  }
  return trace;
}

PocsTrace parallel_pocs(std::span<const ConvexSet> sets, std::span<const double> weights, Point x0,
                        const PocsOptions& options) {
  check_all_dims(sets, x0);
  if (weights.size() != sets.size()) throw ContractError("parallel POCS needs one weight per set");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ContractError("parallel POCS weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ContractError("parallel POCS weights must sum to 1");

  PocsTrace trace;
  trace.iterates.push_back(x0);
  Point current = std::move(x0);
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    Point next = current;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const Point projected = project(sets[s], current);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += weights[s] * (projected[i] - current[i]);
    }
    ++trace.projections;
    const double step = max_abs_diff(next, current);
    current = std::move(next);
    trace.iterates.push_back(current);
    if (step <= options.tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

double weighted_squared_distance(std::span<const ConvexSet> sets, std::span<const double> weights,
                                 std::span<const double> x) {
  if (weights.size() != sets.size()) throw ContractError("need one weight per set");
  double total = 0.0;
  for (std::size_t s = 0; s < sets.size(); ++s) total += weights[s] * squared_distance(x, project(sets[s], x));
  return total;
}

}  // namespace pocs::geometry
