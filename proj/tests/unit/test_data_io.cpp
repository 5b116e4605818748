#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "../support/oracles.hpp"
#include "pocs/baselines.hpp"
#include "pocs/data_io.hpp"

using namespace pocs;
using namespace pocs::io;

#ifndef POCS_FIXTURE_DIR
#error "POCS_FIXTURE_DIR must point at data/fixtures"
#endif

namespace {

std::string fixture(const std::string& name) { return std::string(POCS_FIXTURE_DIR) + "/" + name; }

std::size_t parse_error_line(const std::string& text, const LoadOptions& options = {}) {
  try {
    parse_table(text, "inline", options);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_table: whitespace, tabs, blank lines and CRLF") {
  const RawTable t = parse_table("  1 2\n\n3\t4\r\n   \n5   6\n", "inline");
  CHECK(t.delimiter == Delimiter::whitespace);
  CHECK(t.rows == std::vector<std::vector<double>>{{1, 2}, {3, 4}, {5, 6}});
}

TEST_CASE("parse_table: comma files are detected") {
  const RawTable t = parse_table("1.5, 2\n-3e2,+4\n", "inline");
  CHECK(t.delimiter == Delimiter::comma);
  CHECK(t.rows == std::vector<std::vector<double>>{{1.5, 2}, {-300, 4}});
}

TEST_CASE("parse_table: errors carry the line number") {
  CHECK(parse_error_line("1.0 2.0\n1.0 2.0 3.0") == 2);
  CHECK(parse_error_line("1 2\n\n3 x\n") == 3);
  CHECK(parse_error_line("1 2\n3 nan\n") == 2);
  CHECK(parse_error_line("1 2\ninf 3\n") == 2);
  CHECK(parse_error_line("1,2\n3,,4\n") == 2);
  CHECK(parse_error_line("1,2\n3,4,5\n") == 2);
  CHECK(parse_error_line("\n\n") == 2);
  LoadOptions cols;
  cols.columns = {0, 3};
  CHECK(parse_error_line("1 2 3\n", cols) == 1);
  try {
    parse_table("1.0 2.0\n1.0 2.0 3.0", "inline");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "line 2: expected 2 fields, found 3");
  }
}

TEST_CASE("parse_table: explicit delimiter and column selection") {
  LoadOptions options;
  options.delimiter = Delimiter::whitespace;
  options.columns = {1, 0};
  const RawTable t = parse_table("1 2 9\n3 4 9\n", "inline", options);
  CHECK(t.rows == std::vector<std::vector<double>>{{2, 1}, {4, 3}});
  options.delimiter = Delimiter::comma;
  CHECK(parse_error_line("1 2 9\n", options) == 1);
}

TEST_CASE("load_dataset: fixture files") {
  const RawTable ws = load_dataset(fixture("blobs_ws.txt"));
  CHECK(ws.rows.size() == 60);
  CHECK(ws.arity() == 2);

  LoadOptions options;
  options.columns = parse_column_list("0,1");
  const RawTable labeled = load_dataset(fixture("labeled_tab.txt"), options);
  CHECK(labeled.rows.size() == 48);
  CHECK(labeled.arity() == 2);
  CHECK(load_dataset(fixture("labeled_tab.txt")).arity() == 3);

  const RawTable csv = load_dataset(fixture("points.csv"));
  CHECK(csv.delimiter == Delimiter::comma);
  CHECK(csv.arity() == 3);

  CHECK(load_dataset(fixture("blobs_ws.txt")).rows == ws.rows);
}

TEST_CASE("load_dataset: I/O and parse failures") {
  CHECK_THROWS_AS(load_dataset(fixture("does-not-exist.txt")), IoError);
  const auto path = std::filesystem::temp_directory_path() / "pocs_ragged.txt";
  std::ofstream(path) << "1.0 2.0\n1.0 2.0 3.0\n";
  try {
    load_dataset(path.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find(path.string()) != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("parse_column_list") {
  CHECK(parse_column_list("0,1") == std::vector<std::size_t>{0, 1});
  CHECK(parse_column_list(" 2 , 0") == std::vector<std::size_t>{2, 0});
  CHECK_THROWS_AS(parse_column_list("a,1"), ConfigError);
  CHECK_THROWS_AS(parse_column_list("1,,2"), ConfigError);
  CHECK_THROWS_AS(parse_column_list(""), ConfigError);
}

TEST_CASE("normalize") {
  RawTable t;
  t.rows = {{0, 10}, {10, 20}};
  auto [data, spec] = normalize(t);
  CHECK(data.to_points() == std::vector<Point>{{0, 0}, {1, 1}});

  t.rows = {{5, 1}, {5, 2}};
  auto [constant, cspec] = normalize(t);
  CHECK(constant.point(0)[0] == 0.0);
  CHECK(constant.point(1)[0] == 0.0);
  CHECK(denormalize(constant, cspec).point(1)[0] == 5.0);
}

TEST_CASE("property: normalized data lies in the unit box and inverts exactly") {
  oracle::Generator gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    RawTable t;
    const std::size_t dim = 1 + gen.index(4);
    const double scale = std::pow(10.0, gen.uniform(-3, 6));
    t.rows.resize(2 + gen.index(50));
    for (auto& row : t.rows) row = gen.vec(dim, -scale, scale);
    auto [data, spec] = normalize(t);
    for (double v : data.coords()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    const Dataset back = denormalize(data, spec);
    for (std::size_t i = 0; i < back.size(); ++i) {
      for (std::size_t c = 0; c < dim; ++c) {
        CHECK(std::abs(back.point(i)[c] - t.rows[i][c]) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("make_blobs: determinism and infeasible requests") {
  const auto a = make_blobs(3, 10, 2, 0.05, 0.2, 5);
  const auto b = make_blobs(3, 10, 2, 0.05, 0.2, 5);
  CHECK(a.data.to_points() == b.data.to_points());
  CHECK(a.centers == b.centers);
  CHECK(a.data.size() == 30);
  for (std::size_t i = 0; i < a.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < a.centers.size(); ++j) CHECK(distance(a.centers[i], a.centers[j]) >= 0.2);
  }
  CHECK_THROWS_AS(make_blobs(50, 10, 2, 0.05, 0.9, 1), ConfigError);
  CHECK_THROWS_AS(make_blobs(2, 10, 2, 0.0, 0.1, 1), ConfigError);
  CHECK_THROWS_AS(make_blobs(0, 10, 2, 0.1, 0.1, 1), ConfigError);
}

TEST_CASE("make_blobs: a single cluster stays within four spreads") {
  const double spread = 0.05;
  const auto blobs = make_blobs(1, 20000, 2, spread, 0.1, 8);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < blobs.data.size(); ++i) {
    if (max_abs_diff(blobs.data.point(i), blobs.centers[0]) <= 4.0 * spread) ++inside;
  }
  // Two independent coordinates beyond 4 sigma: about 1.3e-4 of points.
  CHECK(static_cast<double>(inside) / static_cast<double>(blobs.data.size()) >= 0.9995);
}

TEST_CASE("make_blobs: k-means recovers well-separated centers to the standard error") {
  const std::size_t per_cluster = 200;
  const double spread = 0.01;
  const double bound = 3.0 * spread / std::sqrt(static_cast<double>(per_cluster));
  std::size_t within = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto blobs = make_blobs(2, per_cluster, 2, spread, 0.5, seed);
    AlgoConfig config;
    config.algorithm = Algorithm::kmeans;
    config.k = 2;
    config.seed = seed;
    config.max_iter = 300;
    const ClusterModel model = fit_kmeans(blobs.data, config);
    for (const Point& truth : blobs.centers) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& p : model.prototypes) best = std::min(best, max_abs_diff(p, truth));
      within += best <= bound ? 1 : 0;
      ++total;
    }
  }
  CHECK(within == total);
}
