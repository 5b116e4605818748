#ifndef POCS_BASELINES_HPP
#define POCS_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "pocs/types.hpp"

namespace pocs {

struct FuzzyModel {
  std::vector<Point> prototypes;
  std::vector<double> membership;  // row-major n * k, rows sum to 1
  std::size_t k = 0;
  double fuzzifier = 2.0;
  std::size_t iterations_run = 0;
  bool converged = false;
  double objective = 0.0;  // sum_ij u_ij^m ||x_i - c_j||^2

  double membership_at(std::size_t point, std::size_t cluster) const { return membership[point * k + cluster]; }
};

/// k-means++ seeding: the first center uniformly at random, each further one
/// with probability proportional to the squared distance to the nearest
/// chosen center. Throws ConfigError if the dataset has fewer than k
/// distinct points.
std::vector<Point> kmeanspp_init(const Dataset& dataset, std::size_t k, std::uint64_t seed);

/// Lloyd iterations from k-means++ until the assignment stops changing.
ClusterModel fit_kmeans(const Dataset& dataset, const AlgoConfig& config);

/// Fuzzy c-means with fuzzifier `m` (must exceed 1), started from k-means++
/// centers. Stops when no center coordinate moves by more than config.tol.
FuzzyModel fit_fcm(const Dataset& dataset, const AlgoConfig& config, double m);

/// Hard labels by row argmax (ties -> lowest index).
ClusterModel harden(const FuzzyModel& model, const Dataset& dataset);

/// Dispatches on config.algorithm; fcm results are hardened.
ClusterModel fit(const Dataset& dataset, const AlgoConfig& config);

/// Within-cluster sum of squared distances.
double within_cluster_sse(const Dataset& dataset, const std::vector<Point>& prototypes,
                          const Assignment& assignment);

}  // namespace pocs

#endif  // POCS_BASELINES_HPP
