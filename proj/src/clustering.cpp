#include "pocs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pocs/baselines.hpp"
#include "pocs/kernels.hpp"
#include "update_rule.hpp"

namespace pocs {

namespace {

void check_members(std::span<const double> prototype, const std::vector<Point>& members) {
  if (members.empty()) throw ContractError("cluster has no members");
  for (const Point& m : members) {
    if (m.size() != prototype.size()) throw ContractError("member dimension differs from prototype");
  }
}

}  // namespace

namespace detail {

std::vector<Point> unflatten(std::span<const double> flat, std::size_t dim) {
  std::vector<Point> out;
  out.reserve(flat.size() / dim);
  for (std::size_t offset = 0; offset < flat.size(); offset += dim) {
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(offset),
                     flat.begin() + static_cast<std::ptrdiff_t>(offset + dim));
  }
  return out;
}

std::vector<double> flatten(const std::vector<Point>& points) {
  std::vector<double> out;
  for (const Point& p : points) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool reseed_empty_clusters(const Dataset& data, std::vector<double>& centers, std::size_t k,
                           std::vector<std::size_t>& labels, Backend backend) {
  const std::size_t dim = data.dim();
  bool moved = false;
  // Each pass fixes every empty cluster it finds; reassignment can in
  // principle empty another, so repeat (bounded by k).
  for (std::size_t pass = 0; pass < k; ++pass) {
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t label : labels) ++counts[label];
    if (std::find(counts.begin(), counts.end(), 0) == counts.end()) break;

    std::vector<double> nearest_sq(data.size());
    kernels::nearest_squared_distance(backend, data, centers, k, nearest_sq);
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      const auto farthest = static_cast<std::size_t>(
          std::max_element(nearest_sq.begin(), nearest_sq.end()) - nearest_sq.begin());
      const auto p = data.point(farthest);
      std::copy(p.begin(), p.end(), centers.begin() + static_cast<std::ptrdiff_t>(j * dim));
      nearest_sq[farthest] = 0.0;
      moved = true;
    }
    kernels::assign_nearest(backend, data, centers, k, labels);
  }
  return moved;
}

}  // namespace detail

std::vector<double> pocs_weights(std::span<const double> prototype, const std::vector<Point>& members) {
  check_members(prototype, members);
  std::vector<double> distances(members.size());
  double total = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    distances[i] = distance(prototype, members[i]);
    total += distances[i];
  }
  if (total == 0.0) return std::vector<double>(members.size(), 1.0 / static_cast<double>(members.size()));
  for (double& d : distances) d /= total;
  return distances;
}

Point pocs_update_prototype(std::span<const double> prototype, const std::vector<Point>& members) {
  check_members(prototype, members);
  std::vector<double> scratch(members.size());
  Point out(prototype.size());
  detail::distance_weighted_update(
      prototype, members.size(), [&](std::size_t i) { return std::span<const double>(members[i]); }, scratch, out);
  return out;
}

Assignment assign_points(const Dataset& dataset, const std::vector<Point>& prototypes) {
  if (prototypes.empty()) throw ContractError("need at least one prototype");
  for (const Point& p : prototypes) {
    if (p.size() != dataset.dim()) throw ContractError("prototype dimension differs from dataset");
  }
  Assignment out;
  out.labels.assign(dataset.size(), 0);
  kernels::serial::assign_nearest(dataset, detail::flatten(prototypes), prototypes.size(), out.labels);
  return out;
}

double pocs_objective(const ClusterModel& model, const Dataset& dataset) {
  const auto& labels = model.assignment.labels;
  if (labels.size() != dataset.size()) throw ContractError("assignment size differs from dataset size");
  const std::size_t k = model.prototypes.size();
  std::vector<double> distance_sum(k, 0.0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    distance_sum[labels[i]] += distance(model.prototypes[labels[i]], dataset.point(i));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::size_t j = labels[i];
    if (distance_sum[j] == 0.0) continue;  // every member on the prototype
    const double sq = squared_distance(model.prototypes[j], dataset.point(i));
    total += std::sqrt(sq) / distance_sum[j] * sq;
  }
  return total;
}

void validate_config(const AlgoConfig& config, const Dataset& dataset) {
  if (dataset.empty()) throw ConfigError("dataset is empty");
  if (config.k < 1) throw ConfigError("k must be at least 1");
  if (config.k > dataset.size()) {
    throw ConfigError("k = " + std::to_string(config.k) + " exceeds the number of points (" +
                      std::to_string(dataset.size()) + ")");
  }
  if (config.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(config.tol > 0.0)) throw ConfigError("tol must be positive");
  if (config.algorithm == Algorithm::fcm && !(config.fuzzifier > 1.0)) {
    throw ConfigError("fuzzifier must exceed 1");
  }
}

ClusterModel fit_pocs(const Dataset& dataset, const AlgoConfig& config) {
  validate_config(config, dataset);
  const std::size_t k = config.k;
  const std::size_t dim = dataset.dim();

  std::vector<double> centers = detail::flatten(kmeanspp_init(dataset, k, config.seed));
  std::vector<std::size_t> labels(dataset.size(), 0);
  kernels::assign_nearest(config.backend, dataset, centers, k, labels);

  std::vector<double> updated(centers.size());
  std::vector<std::size_t> counts(k);
  ClusterModel model;
  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    kernels::pocs_update(config.backend, dataset, labels, centers, k, updated, counts);
    const double movement = max_abs_diff(updated, centers);
    centers.swap(updated);

    std::size_t changed = 0;
    if (config.reassign) {
      changed = kernels::assign_nearest(config.backend, dataset, centers, k, labels);
      if (detail::reseed_empty_clusters(dataset, centers, k, labels, config.backend)) ++changed;
    }
    model.iterations_run = iter;
    if (movement <= config.tol && changed == 0) {
      model.converged = true;
      break;
    }
  }

  model.prototypes = detail::unflatten(centers, dim);
  model.assignment.labels = std::move(labels);
  model.objective = pocs_objective(model, dataset);
  return model;
}

}  // namespace pocs
