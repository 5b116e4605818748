#include "doctest.h"

#include <omp.h>

#include "../support/oracles.hpp"
#include "pocs/baselines.hpp"
#include "pocs/clustering.hpp"
#include "pocs/data_io.hpp"
#include "pocs/kernels.hpp"

using namespace pocs;

namespace {

struct Case {
  Dataset data;
  std::vector<double> centers;
  std::vector<std::size_t> labels;
  std::size_t k;
};

Case make_case(std::uint64_t seed, std::size_t k) {
  oracle::Generator gen(seed);
  const std::size_t n = 200 + gen.index(800);
  const std::size_t dim = 1 + gen.index(4);
  std::vector<double> coords(n * dim);
  for (double& v : coords) v = gen.uniform(0, 1);
  Case c{Dataset(coords, dim), {}, std::vector<std::size_t>(n, 0), k};
  c.centers.resize(k * dim);
  for (double& v : c.centers) v = gen.uniform(0, 1);
  kernels::serial::assign_nearest(c.data, c.centers, k, c.labels);
  return c;
}

}  // namespace

TEST_CASE("OpenMP kernels match the serial reference bit for bit") {
  omp_set_num_threads(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Case c = make_case(seed, 2 + seed);
    const std::size_t n = c.data.size();

    std::vector<std::size_t> serial_labels(n, 0), omp_labels(n, 0);
    const auto serial_changed = kernels::serial::assign_nearest(c.data, c.centers, c.k, serial_labels);
    const auto omp_changed = kernels::omp::assign_nearest(c.data, c.centers, c.k, omp_labels);
    CHECK(serial_labels == omp_labels);
    CHECK(serial_changed == omp_changed);

    std::vector<double> serial_near(n), omp_near(n);
    kernels::serial::nearest_squared_distance(c.data, c.centers, c.k, serial_near);
    kernels::omp::nearest_squared_distance(c.data, c.centers, c.k, omp_near);
    CHECK(serial_near == omp_near);

    std::vector<double> serial_out(c.centers.size()), omp_out(c.centers.size());
    std::vector<std::size_t> serial_counts(c.k), omp_counts(c.k);
    kernels::serial::pocs_update(c.data, c.labels, c.centers, c.k, serial_out, serial_counts);
    kernels::omp::pocs_update(c.data, c.labels, c.centers, c.k, omp_out, omp_counts);
    CHECK(serial_out == omp_out);
    CHECK(serial_counts == omp_counts);

    kernels::serial::mean_update(c.data, c.labels, c.centers, c.k, serial_out, serial_counts);
    kernels::omp::mean_update(c.data, c.labels, c.centers, c.k, omp_out, omp_counts);
    CHECK(serial_out == omp_out);

    for (double m : {2.0, 1.5, 3.0}) {
      std::vector<double> serial_u(n * c.k), omp_u(n * c.k);
      kernels::serial::fcm_memberships(c.data, c.centers, c.k, m, serial_u);
      kernels::omp::fcm_memberships(c.data, c.centers, c.k, m, omp_u);
      CHECK(serial_u == omp_u);
      std::vector<double> serial_c = c.centers, omp_c = c.centers;
      kernels::serial::fcm_centers(c.data, serial_u, c.k, m, serial_c);
      kernels::omp::fcm_centers(c.data, omp_u, c.k, m, omp_c);
      CHECK(serial_c == omp_c);
    }
  }
}

TEST_CASE("fits are identical under both backends") {
  omp_set_num_threads(3);
  const auto blobs = io::make_blobs(6, 80, 2, 0.03, 0.2, 5);
  for (Algorithm a : {Algorithm::pocs, Algorithm::kmeans, Algorithm::fcm}) {
    AlgoConfig config;
    config.algorithm = a;
    config.k = 6;
    config.seed = 9;
    config.max_iter = default_max_iter(a);
    const ClusterModel serial = fit(blobs.data, config);
    config.backend = Backend::openmp;
    const ClusterModel parallel = fit(blobs.data, config);
    CHECK(serial.prototypes == parallel.prototypes);
    CHECK(serial.assignment.labels == parallel.assignment.labels);
    CHECK(serial.iterations_run == parallel.iterations_run);
  }
}

TEST_CASE("pocs_update kernel agrees with the single-cluster update") {
  const Case c = make_case(42, 5);
  std::vector<double> out(c.centers.size());
  std::vector<std::size_t> counts(c.k);
  kernels::serial::pocs_update(c.data, c.labels, c.centers, c.k, out, counts);
  const std::size_t dim = c.data.dim();
  for (std::size_t j = 0; j < c.k; ++j) {
    std::vector<Point> members;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
      if (c.labels[i] == j) members.emplace_back(c.data.point(i).begin(), c.data.point(i).end());
    }
    CHECK(counts[j] == members.size());
    const std::span<const double> old(c.centers.data() + j * dim, dim);
    const std::span<const double> got(out.data() + j * dim, dim);
    if (members.empty()) {
      CHECK(max_abs_diff(got, old) == 0.0);
    } else {
      CHECK(max_abs_diff(got, pocs_update_prototype(old, members)) == 0.0);
    }
  }
}

TEST_CASE("assign_nearest breaks ties toward the lower index") {
  const Dataset data = Dataset::from_points({{0.5}, {0.0}, {1.0}});
  std::vector<double> centers{0.0, 1.0};
  std::vector<std::size_t> labels(3, 7);
  CHECK(kernels::serial::assign_nearest(data, centers, 2, labels) == 3);
  CHECK(labels == std::vector<std::size_t>{0, 0, 1});
  CHECK(kernels::serial::assign_nearest(data, centers, 2, labels) == 0);
}

TEST_CASE("fcm memberships: coincident point and row sums") {
  const Dataset data = Dataset::from_points({{0.0, 0.0}, {1.0, 1.0}, {0.3, 0.9}});
  const std::vector<double> centers{0.0, 0.0, 1.0, 1.0, 0.0, 0.0};
  std::vector<double> u(9);
  kernels::serial::fcm_memberships(data, centers, 3, 2.0, u);
  CHECK(std::vector<double>(u.begin(), u.begin() + 3) == std::vector<double>{1, 0, 0});
  CHECK(std::vector<double>(u.begin() + 3, u.begin() + 6) == std::vector<double>{0, 1, 0});
  CHECK(u[6] + u[7] + u[8] == doctest::Approx(1.0).epsilon(1e-12));
  // Memberships follow u_j ∝ 1 / d_j^2 for m = 2.
  const double d0 = 0.09 + 0.81, d1 = 0.49 + 0.01;
  CHECK(u[7] / u[6] == doctest::Approx(d0 / d1).epsilon(1e-12));
}
