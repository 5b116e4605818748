#ifndef POCS_TESTS_ORACLES_HPP
#define POCS_TESTS_ORACLES_HPP

// Independent reference computations for the test suites. Nothing here calls
// into the library's update, error or projection code paths.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Argmin of f over a uniform 1-D grid.
inline double grid_argmin_1d(const std::function<double(double)>& f, double lo, double hi, double step) {
  double best_x = lo;
  double best = std::numeric_limits<double>::infinity();
  for (double x = lo; x <= hi + 0.5 * step; x += step) {
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

/// Argmin of f over a uniform 2-D grid restricted by `feasible`.
inline Vec grid_argmin_2d(const std::function<double(const Vec&)>& f, const std::function<bool(const Vec&)>& feasible,
                          Vec lo, Vec hi, double step) {
  Vec best_x = lo;
  double best = std::numeric_limits<double>::infinity();
  for (double x = lo[0]; x <= hi[0] + 0.5 * step; x += step) {
    for (double y = lo[1]; y <= hi[1] + 0.5 * step; y += step) {
      const Vec p{x, y};
      if (!feasible(p)) continue;
      const double v = f(p);
      if (v < best) {
        best = v;
        best_x = p;
      }
    }
  }
  return best_x;
}

/// Central finite-difference gradient.
inline Vec central_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vec plus = x, minus = x;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

/// Clustering error by an explicit (cluster, member) double loop.
inline double naive_clustering_error(const std::vector<Vec>& points, const std::vector<Vec>& prototypes,
                                     const std::vector<std::size_t>& labels) {
  double total = 0.0;
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (labels[i] == c) total += dist(prototypes[c], points[i]);
    }
  }
  return total;
}

/// Distance-weighted mean sum_i (||x-d_i|| / sum_p ||x-d_p||) d_i.
inline Vec weighted_mean(const Vec& x, const std::vector<Vec>& members) {
  double total = 0.0;
  for (const Vec& d : members) total += dist(x, d);
  Vec out(x.size(), 0.0);
  for (const Vec& d : members) {
    const double w = dist(x, d) / total;
    for (std::size_t c = 0; c < x.size(); ++c) out[c] += w * d[c];
  }
  return out;
}

/// Two-pass mean and population standard deviation.
inline std::pair<double, double> two_pass_mean_std(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

struct Generator {
  std::mt19937_64 engine;
  explicit Generator(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine); }
  Vec vec(std::size_t dim, double lo, double hi) {
    Vec v(dim);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }
};

}  // namespace oracle

#endif  // POCS_TESTS_ORACLES_HPP
