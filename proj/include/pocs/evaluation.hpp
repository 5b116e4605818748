#ifndef POCS_EVALUATION_HPP
#define POCS_EVALUATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pocs/types.hpp"

namespace pocs::eval {

/// Sum over points of the unsquared distance to their cluster's prototype.
double clustering_error(const ClusterModel& model, const Dataset& dataset);

struct RunReport {
  std::string algorithm;
  std::string dataset;
  std::uint64_t seed = 0;
  double error = 0.0;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double wall_clock_fit = 0.0;  // seconds
};

struct AggregateReport {
  std::string algorithm;
  std::string dataset;
  std::size_t runs = 0;
  double mean_error = 0.0;
  double std_error = 0.0;  // population standard deviation
  double mean_time = 0.0;  // seconds
  std::vector<RunReport> reports;
};

using Fitter = std::function<ClusterModel(const Dataset&, const AlgoConfig&)>;

struct AlgorithmEntry {
  std::string name;
  AlgoConfig config;   // seed is overwritten per run
  Fitter fit;
  /// Dataset used for scoring when the fit runs in another space (raw-space
  /// fits). Prototypes are mapped with `score_transform` first.
  const Dataset* score_data = nullptr;
  std::function<Point(std::span<const double>)> score_transform;
};

AlgorithmEntry builtin_algorithm(const AlgoConfig& config);

struct ExperimentOptions {
  /// Run seeds one after another on the calling thread. Otherwise runs of
  /// one algorithm are spread over OpenMP threads.
  bool sequential = false;
};

/// Running mean and population variance (Welford).
class RunningStats {
 public:
  void add(double value) noexcept;
  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double population_std() const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// For every algorithm: `runs` fits with seed = base_seed + run index, each
/// timed around the fit call alone. Any failing run aborts with a
/// std::runtime_error naming the algorithm and seed.
std::vector<AggregateReport> run_experiment(const Dataset& dataset, const std::string& dataset_name,
                                            const std::vector<AlgorithmEntry>& algorithms, std::size_t runs,
                                            std::uint64_t base_seed, const ExperimentOptions& options = {});

inline constexpr const char* kCsvHeader = "algorithm,dataset,runs,mean_error,std_error,mean_time_s";

/// `include_timing = false` writes mean_time_s as 0 so outputs are
/// reproducible byte for byte.
std::string to_csv(const std::vector<AggregateReport>& reports, bool include_timing = true);
std::string to_json(const std::vector<AggregateReport>& reports, bool include_timing = true);

/// Shortest round-trip decimal form of `value`.
std::string format_double(double value);

}  // namespace pocs::eval

#endif  // POCS_EVALUATION_HPP
