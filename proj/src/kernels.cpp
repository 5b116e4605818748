#include "pocs/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "update_rule.hpp"

namespace pocs::kernels {

namespace {

using Index = std::ptrdiff_t;  // OpenMP loop counters must be signed

inline std::span<const double> row(std::span<const double> flat, std::size_t i, std::size_t dim) {
  return flat.subspan(i * dim, dim);
}

inline std::size_t nearest(std::span<const double> x, std::span<const double> centers, std::size_t k,
                           double* best_sq = nullptr) {
  const std::size_t dim = x.size();
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    const double d = squared_distance(x, row(centers, j, dim));
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  if (best_sq != nullptr) *best_sq = best_dist;
  return best;
}

// Members of each cluster in ascending point order (counting sort).
struct Membership {
  std::vector<std::size_t> offsets;  // k + 1
  std::vector<std::size_t> members;  // n
};

Membership group_by_label(std::span<const std::size_t> labels, std::size_t k) {
  Membership m;
  m.offsets.assign(k + 1, 0);
  for (std::size_t label : labels) ++m.offsets[label + 1];
  for (std::size_t j = 0; j < k; ++j) m.offsets[j + 1] += m.offsets[j];
  m.members.resize(labels.size());
  std::vector<std::size_t> cursor(m.offsets.begin(), m.offsets.end() - 1);
  for (std::size_t i = 0; i < labels.size(); ++i) m.members[cursor[labels[i]]++] = i;
  return m;
}

void pocs_update_cluster(const Dataset& data, const Membership& groups, std::size_t j,
                         std::span<const double> centers, std::span<double> updated, std::span<std::size_t> counts,
                         std::span<double> scratch) {
  const std::size_t dim = data.dim();
  const std::size_t begin = groups.offsets[j];
  const std::size_t count = groups.offsets[j + 1] - begin;
  counts[j] = count;
  const auto old_center = row(centers, j, dim);
  auto out = updated.subspan(j * dim, dim);
  if (count == 0) {
    for (std::size_t c = 0; c < dim; ++c) out[c] = old_center[c];
    return;
  }
  const std::size_t* members = groups.members.data() + begin;
  detail::distance_weighted_update(
      old_center, count, [&](std::size_t i) { return data.point(members[i]); }, scratch.subspan(begin, count),
      out);
}

void mean_update_cluster(const Dataset& data, const Membership& groups, std::size_t j,
                         std::span<const double> centers, std::span<double> updated, std::span<std::size_t> counts) {
  const std::size_t dim = data.dim();
  const std::size_t begin = groups.offsets[j];
  const std::size_t count = groups.offsets[j + 1] - begin;
  counts[j] = count;
  auto out = updated.subspan(j * dim, dim);
  if (count == 0) {
    const auto old_center = row(centers, j, dim);
    for (std::size_t c = 0; c < dim; ++c) out[c] = old_center[c];
    return;
  }
  for (std::size_t c = 0; c < dim; ++c) out[c] = 0.0;
  for (std::size_t m = begin; m < begin + count; ++m) {
    const auto p = data.point(groups.members[m]);
    for (std::size_t c = 0; c < dim; ++c) out[c] += p[c];
  }
  for (std::size_t c = 0; c < dim; ++c) out[c] /= static_cast<double>(count);
}

void membership_row(std::span<const double> x, std::span<const double> centers, std::size_t k, double fuzzifier,
                    std::span<double> row_out) {
  const std::size_t dim = x.size();
  std::size_t closest = 0;
  double closest_sq = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    row_out[j] = squared_distance(x, row(centers, j, dim));
    if (row_out[j] < closest_sq) {
      closest_sq = row_out[j];
      closest = j;
    }
  }
  if (closest_sq == 0.0) {
    for (std::size_t j = 0; j < k; ++j) row_out[j] = j == closest ? 1.0 : 0.0;
    return;
  }
  // u_j = (d_min^2 / d_j^2)^(1/(m-1)) / sum_l (d_min^2 / d_l^2)^(1/(m-1))
  const double exponent = 1.0 / (fuzzifier - 1.0);
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double ratio = closest_sq / row_out[j];
    row_out[j] = exponent == 1.0 ? ratio : std::pow(ratio, exponent);
    total += row_out[j];
  }
  for (std::size_t j = 0; j < k; ++j) row_out[j] /= total;
}

// Leaves `out` untouched when no point carries weight for cluster j.
void fcm_center(const Dataset& data, std::span<const double> membership, std::size_t k, std::size_t j,
                double fuzzifier, std::span<double> out) {
  const std::size_t dim = data.dim();
  std::vector<double> sum(dim, 0.0);
  double weight_total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double u = membership[i * k + j];
    const double w = fuzzifier == 2.0 ? u * u : std::pow(u, fuzzifier);
    if (w == 0.0) continue;
    const auto p = data.point(i);
    for (std::size_t c = 0; c < dim; ++c) sum[c] += w * p[c];
    weight_total += w;
  }
  if (weight_total == 0.0) return;
  for (std::size_t c = 0; c < dim; ++c) out[c] = sum[c] / weight_total;
}

void check_centers(const Dataset& data, std::span<const double> centers, std::size_t k) {
  if (k == 0 || centers.size() != k * data.dim()) throw ContractError("centers must hold k * dim coordinates");
}

}  // namespace

namespace serial {

std::size_t assign_nearest(const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels) {
  check_centers(data, centers, k);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t best = nearest(data.point(i), centers, k);
    changed += best != labels[i] ? 1 : 0;
    labels[i] = best;
  }
  return changed;
}

void nearest_squared_distance(const Dataset& data, std::span<const double> centers, std::size_t k,
                              std::span<double> out) {
  check_centers(data, centers, k);
  for (std::size_t i = 0; i < data.size(); ++i) nearest(data.point(i), centers, k, &out[i]);
}

void pocs_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts) {
  check_centers(data, centers, k);
  const Membership groups = group_by_label(labels, k);
  std::vector<double> scratch(data.size());
  for (std::size_t j = 0; j < k; ++j) pocs_update_cluster(data, groups, j, centers, updated, counts, scratch);
}

void mean_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts) {
  check_centers(data, centers, k);
  const Membership groups = group_by_label(labels, k);
  for (std::size_t j = 0; j < k; ++j) mean_update_cluster(data, groups, j, centers, updated, counts);
}

void fcm_memberships(const Dataset& data, std::span<const double> centers, std::size_t k, double fuzzifier,
                     std::span<double> membership) {
  check_centers(data, centers, k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    membership_row(data.point(i), centers, k, fuzzifier, membership.subspan(i * k, k));
  }
}

void fcm_centers(const Dataset& data, std::span<const double> membership, std::size_t k, double fuzzifier,
                 std::span<double> centers) {
  check_centers(data, centers, k);
  for (std::size_t j = 0; j < k; ++j) {
    fcm_center(data, membership, k, j, fuzzifier, centers.subspan(j * data.dim(), data.dim()));
  }
}

}  // namespace serial

namespace omp {

std::size_t assign_nearest(const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels) {
  check_centers(data, centers, k);
  const Index n = static_cast<Index>(data.size());
  std::size_t changed = 0;
#pragma omp parallel for schedule(static) reduction(+ : changed)
  for (Index i = 0; i < n; ++i) {
    const std::size_t best = nearest(data.point(i), centers, k);
    changed += best != labels[i] ? 1 : 0;
    labels[i] = best;
  }
  return changed;
}

void nearest_squared_distance(const Dataset& data, std::span<const double> centers, std::size_t k,
                              std::span<double> out) {
  check_centers(data, centers, k);
  const Index n = static_cast<Index>(data.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) nearest(data.point(i), centers, k, &out[i]);
}

void pocs_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts) {
  check_centers(data, centers, k);
  const Membership groups = group_by_label(labels, k);
  std::vector<double> scratch(data.size());
  const Index clusters = static_cast<Index>(k);
#pragma omp parallel for schedule(dynamic)
  for (Index j = 0; j < clusters; ++j) pocs_update_cluster(data, groups, j, centers, updated, counts, scratch);
}

void mean_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts) {
  check_centers(data, centers, k);
  const Membership groups = group_by_label(labels, k);
  const Index clusters = static_cast<Index>(k);
#pragma omp parallel for schedule(dynamic)
  for (Index j = 0; j < clusters; ++j) mean_update_cluster(data, groups, j, centers, updated, counts);
}

void fcm_memberships(const Dataset& data, std::span<const double> centers, std::size_t k, double fuzzifier,
                     std::span<double> membership) {
  check_centers(data, centers, k);
  const Index n = static_cast<Index>(data.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    membership_row(data.point(i), centers, k, fuzzifier, membership.subspan(i * k, k));
  }
}

void fcm_centers(const Dataset& data, std::span<const double> membership, std::size_t k, double fuzzifier,
                 std::span<double> centers) {
  check_centers(data, centers, k);
  const Index clusters = static_cast<Index>(k);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < clusters; ++j) {
    fcm_center(data, membership, k, j, fuzzifier, centers.subspan(j * data.dim(), data.dim()));
  }
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace omp

std::size_t assign_nearest(Backend backend, const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels) {
  return backend == Backend::openmp ? omp::assign_nearest(data, centers, k, labels)
                                    : serial::assign_nearest(data, centers, k, labels);
}

void nearest_squared_distance(Backend backend, const Dataset& data, std::span<const double> centers,
                              std::size_t k, std::span<double> out) {
  if (backend == Backend::openmp) {
    omp::nearest_squared_distance(data, centers, k, out);
  } else {
    serial::nearest_squared_distance(data, centers, k, out);
  }
}

void pocs_update(Backend backend, const Dataset& data, std::span<const std::size_t> labels,
                 std::span<const double> centers, std::size_t k, std::span<double> updated,
                 std::span<std::size_t> counts) {
  if (backend == Backend::openmp) {
    omp::pocs_update(data, labels, centers, k, updated, counts);
  } else {
    serial::pocs_update(data, labels, centers, k, updated, counts);
  }
}

void mean_update(Backend backend, const Dataset& data, std::span<const std::size_t> labels,
                 std::span<const double> centers, std::size_t k, std::span<double> updated,
                 std::span<std::size_t> counts) {
  if (backend == Backend::openmp) {
    omp::mean_update(data, labels, centers, k, updated, counts);
  } else {
    serial::mean_update(data, labels, centers, k, updated, counts);
  }
}

void fcm_memberships(Backend backend, const Dataset& data, std::span<const double> centers, std::size_t k,
                     double fuzzifier, std::span<double> membership) {
  if (backend == Backend::openmp) {
    omp::fcm_memberships(data, centers, k, fuzzifier, membership);
  } else {
    serial::fcm_memberships(data, centers, k, fuzzifier, membership);
  }
}

void fcm_centers(Backend backend, const Dataset& data, std::span<const double> membership, std::size_t k,
                 double fuzzifier, std::span<double> centers) {
  if (backend == Backend::openmp) {
    omp::fcm_centers(data, membership, k, fuzzifier, centers);
  } else {
    serial::fcm_centers(data, membership, k, fuzzifier, centers);
  }
}

}  // namespace pocs::kernels
