#ifndef POCS_KERNELS_HPP
#define POCS_KERNELS_HPP

#include <cstddef>
#include <span>

#include "pocs/types.hpp"

// Per-iteration data-parallel kernels shared by the three fits. Centers are
// passed row-major as k * dim doubles. `serial` is the reference
// implementation; `omp` splits the point loop (assignment, memberships) or
// the cluster loop (prototype updates) across OpenMP threads. Every reduction
// runs in the same order in both, so results are bit-identical.

namespace pocs::kernels {

namespace serial {

/// Writes the index of the nearest center for every point (ties -> lowest
/// index). Returns how many labels differ from the values passed in.
std::size_t assign_nearest(const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels);

void nearest_squared_distance(const Dataset& data, std::span<const double> centers, std::size_t k,
                              std::span<double> out);

/// Distance-weighted POCS prototype step for every non-empty cluster.
/// Empty clusters copy their old center. `counts` receives cluster sizes.
void pocs_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts);

/// Arithmetic mean of each non-empty cluster; empty clusters copy the old center.
void mean_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts);

/// Fuzzy c-means memberships, row-major n * k. A point coinciding with a
/// center gets membership 1 at the first such center.
void fcm_memberships(const Dataset& data, std::span<const double> centers, std::size_t k, double fuzzifier,
                     std::span<double> membership);

/// Weighted means with weights u^m. `centers` holds the previous centers on
/// entry; a cluster with zero total weight keeps its old center.
void fcm_centers(const Dataset& data, std::span<const double> membership, std::size_t k, double fuzzifier,
                 std::span<double> centers);

}  // namespace serial

namespace omp {

std::size_t assign_nearest(const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels);
void nearest_squared_distance(const Dataset& data, std::span<const double> centers, std::size_t k,
                              std::span<double> out);
void pocs_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts);
void mean_update(const Dataset& data, std::span<const std::size_t> labels, std::span<const double> centers,
                 std::size_t k, std::span<double> updated, std::span<std::size_t> counts);
void fcm_memberships(const Dataset& data, std::span<const double> centers, std::size_t k, double fuzzifier,
                     std::span<double> membership);
void fcm_centers(const Dataset& data, std::span<const double> membership, std::size_t k, double fuzzifier,
                 std::span<double> centers);

/// Number of threads an OpenMP region would use here; 1 without OpenMP.
int max_threads() noexcept;

}  // namespace omp

// Backend dispatch.
std::size_t assign_nearest(Backend backend, const Dataset& data, std::span<const double> centers, std::size_t k,
                           std::span<std::size_t> labels);
void nearest_squared_distance(Backend backend, const Dataset& data, std::span<const double> centers,
                              std::size_t k, std::span<double> out);
void pocs_update(Backend backend, const Dataset& data, std::span<const std::size_t> labels,
                 std::span<const double> centers, std::size_t k, std::span<double> updated,
                 std::span<std::size_t> counts);
void mean_update(Backend backend, const Dataset& data, std::span<const std::size_t> labels,
                 std::span<const double> centers, std::size_t k, std::span<double> updated,
                 std::span<std::size_t> counts);
void fcm_memberships(Backend backend, const Dataset& data, std::span<const double> centers, std::size_t k,
                     double fuzzifier, std::span<double> membership);
void fcm_centers(Backend backend, const Dataset& data, std::span<const double> membership, std::size_t k,
                 double fuzzifier, std::span<double> centers);

}  // namespace pocs::kernels

#endif  // POCS_KERNELS_HPP
