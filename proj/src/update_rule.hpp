#ifndef POCS_SRC_UPDATE_RULE_HPP
#define POCS_SRC_UPDATE_RULE_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace pocs::detail {

// Shared by the single-cluster API and the kernels so both follow one
// summation order. `member(i)` returns a span over the i-th member point;
// `distances` is scratch of at least `count` doubles. Writes
// x + sum_i w_i (d_i - x) into `out` and returns sum_p ||x - d_p||.
template <class MemberFn>
double distance_weighted_update(std::span<const double> prototype, std::size_t count, MemberFn&& member,
                                std::span<double> distances, std::span<double> out) {
  const std::size_t dim = prototype.size();
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<const double> d = member(i);
    double sq = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = prototype[c] - d[c];
      sq += diff * diff;
    }
    distances[i] = std::sqrt(sq);
    total += distances[i];
  }
  for (std::size_t c = 0; c < dim; ++c) out[c] = prototype[c];
  if (total == 0.0) return total;  // every member sits on the prototype
  for (std::size_t i = 0; i < count; ++i) {
    const double weight = distances[i] / total;
    const std::span<const double> d = member(i);
    for (std::size_t c = 0; c < dim; ++c) out[c] += weight * (d[c] - prototype[c]);
  }
  return total;
}

}  // namespace pocs::detail

#endif  // POCS_SRC_UPDATE_RULE_HPP
