#include "pocs/types.hpp"

#include <algorithm>
#include <cmath>

namespace pocs {

Dataset::Dataset(std::vector<double> coords, std::size_t dim) : coords_(std::move(coords)), dim_(dim) {
  if (dim_ == 0) throw ContractError("dataset dimension must be positive");
  if (coords_.empty()) throw ContractError("dataset must contain at least one point");
  if (coords_.size() % dim_ != 0) throw ContractError("coordinate count is not a multiple of the dimension");
  for (double v : coords_) {
    if (!std::isfinite(v)) throw ContractError("dataset coordinates must be finite");
  }
}

Dataset Dataset::from_points(const std::vector<Point>& points) {
  if (points.empty()) throw ContractError("dataset must contain at least one point");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const Point& p : points) {
    if (p.size() != dim) throw ContractError("points must share one dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Dataset(std::move(coords), dim);
}

std::vector<Point> Dataset::to_points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

std::size_t default_max_iter(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::pocs:
      return 100;
    case Algorithm::kmeans:
    case Algorithm::fcm:
      return 300;
  }
  return 100;
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::pocs:
      return "pocs";
    case Algorithm::kmeans:
      return "kmeans";
    case Algorithm::fcm:
      return "fcm";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pocs") return Algorithm::pocs;
  if (name == "kmeans") return Algorithm::kmeans;
  if (name == "fcm") return Algorithm::fcm;
  throw ConfigError("unknown algorithm '" + name + "' (expected pocs, kmeans or fcm)");
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace pocs
