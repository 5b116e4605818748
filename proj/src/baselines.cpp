#include "pocs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pocs/clustering.hpp"
#include "pocs/kernels.hpp"
#include "pocs/rng.hpp"

namespace pocs {

namespace {

std::size_t count_distinct(const Dataset& data, std::size_t stop_at) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = data.point(a);
    const auto pb = data.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size() && distinct < stop_at; ++i) {
    const auto prev = data.point(order[i - 1]);
    const auto cur = data.point(order[i]);
    if (!std::equal(prev.begin(), prev.end(), cur.begin())) ++distinct;
  }
  return distinct;
}

}  // namespace

std::vector<Point> kmeanspp_init(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (k > dataset.size() || count_distinct(dataset, k) < k) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds the number of distinct points");
  }
  Rng rng(seed);
  const std::size_t n = dataset.size();
  std::vector<Point> centers;
  centers.reserve(k);

  auto first = dataset.point(rng.uniform_index(n));
  centers.emplace_back(first.begin(), first.end());

  std::vector<double> nearest_sq(n);
  for (std::size_t i = 0; i < n; ++i) nearest_sq[i] = squared_distance(dataset.point(i), centers.back());

  while (centers.size() < k) {
    double total = 0.0;
    for (double d : nearest_sq) total += d;
    const double target = rng.uniform() * total;
    std::size_t chosen = n;
    std::size_t last_positive = n;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (nearest_sq[i] <= 0.0) continue;
      last_positive = i;
      cumulative += nearest_sq[i];
      if (cumulative > target) {
        chosen = i;
        break;
      }
    }
    if (chosen == n) chosen = last_positive;  // rounding left target at the very top
    auto p = dataset.point(chosen);
    centers.emplace_back(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) {
      nearest_sq[i] = std::min(nearest_sq[i], squared_distance(dataset.point(i), centers.back()));
    }
  }
  return centers;
}

double within_cluster_sse(const Dataset& dataset, const std::vector<Point>& prototypes,
                          const Assignment& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    total += squared_distance(prototypes[assignment.labels[i]], dataset.point(i));
  }
  return total;
}

ClusterModel fit_kmeans(const Dataset& dataset, const AlgoConfig& config) {
  validate_config(config, dataset);
  const std::size_t k = config.k;
  std::vector<double> centers = detail::flatten(kmeanspp_init(dataset, k, config.seed));
  std::vector<std::size_t> labels(dataset.size(), 0);
  kernels::assign_nearest(config.backend, dataset, centers, k, labels);

  std::vector<double> updated(centers.size());
  std::vector<std::size_t> counts(k);
  ClusterModel model;
  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    kernels::mean_update(config.backend, dataset, labels, centers, k, updated, counts);
    centers.swap(updated);
    std::size_t changed = kernels::assign_nearest(config.backend, dataset, centers, k, labels);
    if (detail::reseed_empty_clusters(dataset, centers, k, labels, config.backend)) ++changed;
    model.iterations_run = iter;
    if (changed == 0) {
      model.converged = true;
      break;
    }
  }
  model.prototypes = detail::unflatten(centers, dataset.dim());
  model.assignment.labels = std::move(labels);
  model.objective = within_cluster_sse(dataset, model.prototypes, model.assignment);
  return model;
}

FuzzyModel fit_fcm(const Dataset& dataset, const AlgoConfig& config, double m) {
  if (!(m > 1.0)) throw ConfigError("fuzzifier must exceed 1");
  AlgoConfig checked = config;
  checked.algorithm = Algorithm::fcm;
  checked.fuzzifier = m;
  validate_config(checked, dataset);

  const std::size_t k = config.k;
  const std::size_t n = dataset.size();
  std::vector<double> centers = detail::flatten(kmeanspp_init(dataset, k, config.seed));
  std::vector<double> previous(centers.size());
  FuzzyModel model;
  model.k = k;
  model.fuzzifier = m;
  model.membership.assign(n * k, 0.0);

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    kernels::fcm_memberships(config.backend, dataset, centers, k, m, model.membership);
    previous = centers;
    kernels::fcm_centers(config.backend, dataset, model.membership, k, m, centers);
    model.iterations_run = iter;
    if (max_abs_diff(centers, previous) <= config.tol) {
      model.converged = true;
      break;
    }
  }

  model.prototypes = detail::unflatten(centers, dataset.dim());
  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      objective += std::pow(model.membership[i * k + j], m) * squared_distance(dataset.point(i), model.prototypes[j]);
    }
  }
  model.objective = objective;
  return model;
}

ClusterModel harden(const FuzzyModel& model, const Dataset& dataset) {
  if (model.membership.size() != dataset.size() * model.k) {
    throw ContractError("membership matrix size differs from dataset size");
  }
  ClusterModel out;
  out.prototypes = model.prototypes;
  out.iterations_run = model.iterations_run;
  out.converged = model.converged;
  out.objective = model.objective;
  out.assignment.labels.resize(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const double* row = model.membership.data() + i * model.k;
    out.assignment.labels[i] = static_cast<std::size_t>(std::max_element(row, row + model.k) - row);
  }
  return out;
}

ClusterModel fit(const Dataset& dataset, const AlgoConfig& config) {
  switch (config.algorithm) {
    case Algorithm::pocs:
      return fit_pocs(dataset, config);
    case Algorithm::kmeans:
      return fit_kmeans(dataset, config);
    case Algorithm::fcm:
      return harden(fit_fcm(dataset, config, config.fuzzifier), dataset);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace pocs
