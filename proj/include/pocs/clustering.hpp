#ifndef POCS_CLUSTERING_HPP
#define POCS_CLUSTERING_HPP

#include <span>
#include <vector>

#include "pocs/types.hpp"

namespace pocs {

/// Projection weights of a prototype onto its member points:
/// w_i = ||x - d_i|| / sum_p ||x - d_p||. When every member sits on the
/// prototype the ratio is 0/0 and uniform weights are returned instead.
/// Throws ContractError on an empty member list.
std::vector<double> pocs_weights(std::span<const double> prototype, const std::vector<Point>& members);

/// One parallel-projection step: x + sum_i w_i (d_i - x). Because the weights
/// sum to one this is the distance-weighted mean of the members.
Point pocs_update_prototype(std::span<const double> prototype, const std::vector<Point>& members);

/// Nearest prototype per point, ties broken by lowest index.
Assignment assign_points(const Dataset& dataset, const std::vector<Point>& prototypes);

/// sum_j sum_{i in cluster j} w_i ||x_j - d_i||^2 with the weights above.
double pocs_objective(const ClusterModel& model, const Dataset& dataset);

/// POCS-based clustering. Prototypes start from k-means++; each iteration
/// moves every non-empty cluster's prototype by one weighted parallel
/// projection onto its members, reseeds empty clusters, and reassigns points
/// (unless config.reassign is false). Stops once the largest coordinate move
/// is <= tol and no label changed, or after max_iter iterations.
ClusterModel fit_pocs(const Dataset& dataset, const AlgoConfig& config);

/// Throws ConfigError when `config` cannot run on `dataset`.
void validate_config(const AlgoConfig& config, const Dataset& dataset);

namespace detail {

/// Points every empty cluster at the point farthest from its nearest center
/// and reassigns. Returns true when any center moved.
bool reseed_empty_clusters(const Dataset& data, std::vector<double>& centers, std::size_t k,
                           std::vector<std::size_t>& labels, Backend backend);

std::vector<Point> unflatten(std::span<const double> flat, std::size_t dim);
std::vector<double> flatten(const std::vector<Point>& points);

}  // namespace detail

}  // namespace pocs

#endif  // POCS_CLUSTERING_HPP
