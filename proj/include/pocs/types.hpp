#ifndef POCS_TYPES_HPP
#define POCS_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pocs {

using Point = std::vector<double>;

/// A precondition of a library call was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An algorithm configuration is invalid for the data it is applied to.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : std::runtime_error("line " + std::to_string(line) + ": " + detail), line_(line), detail_(detail) {}
  ParseError(const std::string& source, std::size_t line, const std::string& detail)
      : std::runtime_error(source + ": line " + std::to_string(line) + ": " + detail), line_(line), detail_(detail) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Non-empty set of equal-dimension finite points, stored row-major.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<double> coords, std::size_t dim);

  static Dataset from_points(const std::vector<Point>& points);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  std::vector<Point> to_points() const;

 private:
  std::vector<double> coords_;
  std::size_t dim_ = 0;
};

struct Assignment {
  std::vector<std::size_t> labels;
};

enum class Algorithm { pocs, kmeans, fcm };

enum class EmptyClusterPolicy { reseed_farthest };

/// Which implementation of the per-iteration kernels a fit uses. Both produce
/// bit-identical results; `openmp` splits the point and cluster loops across
/// threads.
enum class Backend { serial, openmp };

struct AlgoConfig {
  Algorithm algorithm = Algorithm::pocs;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::size_t max_iter = 100;
  double tol = 1e-6;
  double fuzzifier = 2.0;  // fcm only
  bool reassign = true;    // pocs only; false keeps the initial assignment
  EmptyClusterPolicy empty_cluster_policy = EmptyClusterPolicy::reseed_farthest;
  Backend backend = Backend::serial;
};

std::size_t default_max_iter(Algorithm algorithm) noexcept;
std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

/// Hard clustering result. `objective` is the cost the algorithm minimizes:
/// the distance-weighted cost for pocs, the within-cluster sum of squares
/// for kmeans, and the fuzzy cost J_m for a hardened fcm model.
struct ClusterModel {
  std::vector<Point> prototypes;
  Assignment assignment;
  std::size_t iterations_run = 0;
  bool converged = false;
  double objective = 0.0;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;
double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace pocs

#endif  // POCS_TYPES_HPP
