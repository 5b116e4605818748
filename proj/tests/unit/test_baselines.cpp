#include "doctest.h"

#include <algorithm>
#include <set>

#include "../support/oracles.hpp"
#include "pocs/baselines.hpp"
#include "pocs/clustering.hpp"
#include "pocs/data_io.hpp"

using namespace pocs;

TEST_CASE("kmeanspp_init: k = 1 draws a dataset point, covering every point over seeds") {
  const Dataset data = Dataset::from_points({{0.0}, {1.0}, {2.0}, {3.0}});
  std::set<double> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto centers = kmeanspp_init(data, 1, seed);
    REQUIRE(centers.size() == 1);
    seen.insert(centers[0][0]);
  }
  CHECK(seen == std::set<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("kmeanspp_init: a duplicate of a chosen center is never chosen again") {
  // Hand enumeration: if 0 is drawn first both remaining D^2 weights sit on
  // 10; if 10 is drawn first the weights are (100, 100, 0) over {0, 0, 10}.
  const Dataset data = Dataset::from_points({{0.0}, {0.0}, {10.0}});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto centers = kmeanspp_init(data, 2, seed);
    std::sort(centers.begin(), centers.end());
    CHECK(centers == std::vector<Point>{{0.0}, {10.0}});
  }
}

TEST_CASE("kmeanspp_init: deterministic, distinct, and rejects k above the distinct count") {
  const auto blobs = io::make_blobs(4, 30, 3, 0.05, 0.2, 1);
  CHECK(kmeanspp_init(blobs.data, 7, 99) == kmeanspp_init(blobs.data, 7, 99));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto centers = kmeanspp_init(blobs.data, 12, seed);
    CHECK(std::set<Point>(centers.begin(), centers.end()).size() == 12);
  }
  const Dataset dupes = Dataset::from_points({{1.0}, {1.0}, {2.0}});
  CHECK_THROWS_AS(kmeanspp_init(dupes, 3, 0), ConfigError);
  CHECK_THROWS_AS(kmeanspp_init(dupes, 4, 0), ConfigError);
}

TEST_CASE("fit_kmeans: separated blobs land on their means") {
  const Dataset data = Dataset::from_points({{0.0}, {0.1}, {10.0}, {10.1}});
  AlgoConfig config;
  config.algorithm = Algorithm::kmeans;
  config.k = 2;
  config.max_iter = 300;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    config.seed = seed;
    const ClusterModel model = fit_kmeans(data, config);
    std::vector<double> protos{model.prototypes[0][0], model.prototypes[1][0]};
    std::sort(protos.begin(), protos.end());
    CHECK(protos[0] == (0.0 + 0.1) / 2.0);
    CHECK(protos[1] == (10.0 + 10.1) / 2.0);
    CHECK(model.iterations_run <= 2);
    CHECK(model.converged);
  }
}

TEST_CASE("fit_kmeans: k = n gives zero cost") {
  const Dataset data = Dataset::from_points({{0.0, 1.0}, {0.3, 0.2}, {0.8, 0.5}});
  AlgoConfig config;
  config.algorithm = Algorithm::kmeans;
  config.k = 3;
  const ClusterModel model = fit_kmeans(data, config);
  CHECK(model.objective == 0.0);
  CHECK(within_cluster_sse(data, model.prototypes, model.assignment) == 0.0);
}

TEST_CASE("fit_kmeans: cost never increases across Lloyd iterations") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto blobs = io::make_blobs(6, 50, 2, 0.08, 0.1, seed);
    AlgoConfig config;
    config.algorithm = Algorithm::kmeans;
    config.k = 6;
    config.seed = seed;
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t iters = 1; iters <= 30; ++iters) {
      config.max_iter = iters;
      const ClusterModel model = fit_kmeans(blobs.data, config);
      CHECK(model.objective <= previous + 1e-9);
      previous = model.objective;
      if (model.converged) break;
    }
  }
}

TEST_CASE("fit_fcm: memberships are row-stochastic and centers stay inside the data box") {
  const auto blobs = io::make_blobs(5, 40, 2, 0.07, 0.15, 12);
  const auto spec = io::fit_normalization(blobs.data);
  AlgoConfig config;
  config.algorithm = Algorithm::fcm;
  config.k = 5;
  config.seed = 3;
  for (double m : {1.5, 2.0, 3.0}) {
    for (std::size_t iters : {1, 2, 5, 300}) {
      config.max_iter = iters;
      const FuzzyModel model = fit_fcm(blobs.data, config, m);
      for (std::size_t i = 0; i < blobs.data.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < model.k; ++j) {
          const double u = model.membership_at(i, j);
          CHECK(u >= 0.0);
          CHECK(u <= 1.0);
          row += u;
        }
        CHECK(std::abs(row - 1.0) <= 1e-9);
      }
      for (const Point& c : model.prototypes) {
        for (std::size_t d = 0; d < 2; ++d) {
          CHECK(c[d] >= spec.min[d]);
          CHECK(c[d] <= spec.max[d]);
        }
      }
    }
  }
}

TEST_CASE("fit_fcm: symmetric data gives symmetric centers") {
  AlgoConfig config;
  config.algorithm = Algorithm::fcm;
  config.k = 2;
  config.max_iter = 300;

  // Two points, two centers: k-means++ seeds on the points themselves and the
  // coincidence rule pins the memberships, so the centers stay at +-1.
  const FuzzyModel pinned = fit_fcm(Dataset::from_points({{-1.0}, {1.0}}), config, 2.0);
  CHECK(pinned.prototypes[0][0] == -pinned.prototypes[1][0]);
  CHECK(std::abs(pinned.prototypes[0][0]) > 0.0);
  CHECK(std::abs(pinned.prototypes[0][0]) <= 1.0);

  // Spread members: compare against the symmetric fixed point c = f(c) for
  // centers at +-c, iterated directly from the m=2 membership formula.
  const std::vector<double> xs{-1.2, -0.8, 0.8, 1.2};
  const Dataset spread = Dataset::from_points({{-1.2}, {-0.8}, {0.8}, {1.2}});
  config.tol = 1e-12;
  const FuzzyModel model = fit_fcm(spread, config, 2.0);
  REQUIRE(model.converged);
  double fixed = 1.0;
  for (int it = 0; it < 10000; ++it) {
    double num = 0.0, den = 0.0;
    for (double x : xs) {
      const double near = (x - fixed) * (x - fixed), far = (x + fixed) * (x + fixed);
      const double u = far / (near + far);
      num += u * u * x;
      den += u * u;
    }
    fixed = num / den;
  }
  const double c = std::abs(model.prototypes[0][0]);
  CHECK(c == doctest::Approx(fixed).epsilon(1e-9));
  CHECK(model.prototypes[0][0] == doctest::Approx(-model.prototypes[1][0]).epsilon(1e-6));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(model.membership_at(i, 0) + model.membership_at(i, 1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fit_fcm: point on a center gets a basis membership row") {
  const Dataset data = Dataset::from_points({{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.2}});
  AlgoConfig config;
  config.algorithm = Algorithm::fcm;
  config.k = 3;
  config.max_iter = 1;
  const FuzzyModel model = fit_fcm(data, config, 2.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = std::vector<double>(model.membership.begin() + static_cast<std::ptrdiff_t>(3 * i),
                                         model.membership.begin() + static_cast<std::ptrdiff_t>(3 * i + 3));
    CHECK(std::count(row.begin(), row.end(), 1.0) == 1);
    CHECK(std::count(row.begin(), row.end(), 0.0) == 2);
  }
}

TEST_CASE("fit_fcm: fuzzifier must exceed 1") {
  const Dataset data = Dataset::from_points({{0.0}, {1.0}});
  AlgoConfig config;
  config.k = 2;
  CHECK_THROWS_WITH_AS(fit_fcm(data, config, 1.0), "fuzzifier must exceed 1", ConfigError);
  CHECK_THROWS_AS(fit_fcm(data, config, 0.5), ConfigError);
}

TEST_CASE("harden") {
  FuzzyModel model;
  model.k = 2;
  model.prototypes = {{0.0}, {1.0}};
  model.membership = {0.2, 0.8, 0.5, 0.5, 1.0, 0.0, 0.0, 1.0};
  const Dataset data = Dataset::from_points({{0.9}, {0.5}, {0.0}, {1.0}});
  const ClusterModel hard = harden(model, data);
  CHECK(hard.assignment.labels == std::vector<std::size_t>{1, 0, 0, 1});
  CHECK(hard.prototypes == model.prototypes);
  CHECK_THROWS_AS(harden(model, Dataset::from_points({{0.0}})), ContractError);
}

TEST_CASE("all three fits are bit-identical across repeated calls") {
  const auto blobs = io::make_blobs(4, 40, 2, 0.05, 0.2, 77);
  for (Algorithm a : {Algorithm::pocs, Algorithm::kmeans, Algorithm::fcm}) {
    AlgoConfig config;
    config.algorithm = a;
    config.k = 4;
    config.seed = 1234;
    config.max_iter = default_max_iter(a);
    const ClusterModel first = fit(blobs.data, config);
    const ClusterModel second = fit(blobs.data, config);
    CHECK(first.prototypes == second.prototypes);
    CHECK(first.assignment.labels == second.assignment.labels);
    CHECK(first.objective == second.objective);
    CHECK(first.iterations_run == second.iterations_run);
  }
}
