#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pocs/baselines.hpp"
#include "pocs/clustering.hpp"
#include "pocs/data_io.hpp"
#include "pocs/evaluation.hpp"
#include "pocs/geometry.hpp"
#include "pocs/registry.hpp"
#include "pocs/svg.hpp"

namespace pocs::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Flag combination rejected before any work is done.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data missing or inconsistent with the registry.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgoFlags {
  std::string algo = "pocs";
  std::size_t k = 0;  // 0: take it from the registry entry
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_iter;
  double tol = 1e-6;
  double m = 2.0;
  bool no_reassign = false;
  bool raw_space = false;
  std::string kernels = "serial";

  void add_to(CLI::App& app) {
    app.add_option("--k", k, "Number of clusters (defaults to the registry value for --dataset)");
    app.add_option("--seed", seed, "Base seed");
    app.add_option("--max-iter", max_iter, "Iteration cap (default 100 pocs, 300 kmeans/fcm)");
    app.add_option("--tol", tol, "Convergence tolerance in normalized units");
    app.add_option("--m", m, "FCM fuzzifier");
    app.add_flag("--no-reassign", no_reassign, "POCS: keep the initial assignment for all iterations");
    app.add_flag("--raw-space", raw_space, "Fit on raw coordinates (error is still scored on normalized data)");
    app.add_option("--kernels", kernels, "Kernel backend")->check(CLI::IsMember({"serial", "openmp"}));
  }

  void validate(const std::vector<Algorithm>& algorithms) const {
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    if (max_iter && *max_iter < 1) throw UsageError("--max-iter must be at least 1");
    for (Algorithm a : algorithms) {
      if (a == Algorithm::fcm && !(m > 1.0)) throw UsageError("fuzzifier must exceed 1");
    }
  }

  AlgoConfig config_for(Algorithm algorithm, std::size_t clusters) const {
    AlgoConfig c;
    c.algorithm = algorithm;
    c.k = clusters;
    c.seed = seed;
    c.max_iter = max_iter.value_or(default_max_iter(algorithm));
    c.tol = tol;
    c.fuzzifier = m;
    c.reassign = !no_reassign;
    c.backend = kernels == "openmp" ? Backend::openmp : Backend::serial;
    return c;
  }
};

struct DataFlags {
  std::string data;
  std::string dataset;
  std::string columns;

  void add_to(CLI::App& app) {
    auto* data_opt = app.add_option("--data", data, "Point file (whitespace or comma separated)");
    auto* name_opt = app.add_option("--dataset", dataset, "Registered dataset name (a1, a2, s1, s2, r15, aggregation)");
    data_opt->excludes(name_opt);
    app.add_option("--columns", columns, "Comma-separated coordinate columns, e.g. 0,1");
  }

  void validate() const {
    if (data.empty() == dataset.empty()) throw UsageError("exactly one of --data or --dataset is required");
    if (!columns.empty()) {
      try {
        io::parse_column_list(columns);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
  }
};

struct LoadedData {
  std::string name;
  std::string path;
  std::vector<std::size_t> columns;
  std::size_t registry_k = 0;
  Dataset raw;
  Dataset normalized;
  io::NormalizationSpec normalization;
};

std::string dataset_label(const std::string& path) { return fs::path(path).stem().string(); }

const registry::Entry& registry_entry(const registry::Registry& reg, const std::string& name) {
  const registry::Entry* entry = reg.find(name);
  if (entry == nullptr) throw UsageError("unknown dataset '" + name + "'");
  return *entry;
}

LoadedData load_file(const std::string& path, std::string name, std::vector<std::size_t> columns,
                     const registry::Entry* entry) {
  if (!fs::exists(path)) throw DataError("missing dataset file: " + path);
  if (entry != nullptr && !entry->sha256.empty()) {
    const std::string actual = registry::sha256_file(path);
    if (actual != entry->sha256) {
      throw DataError(path + ": sha256 " + actual + " does not match the registry (" + entry->sha256 + ")");
    }
  }
  io::LoadOptions options;
  options.columns = columns;
  const io::RawTable table = io::load_dataset(path, options);
  if (entry != nullptr && (table.rows.size() != entry->rows || table.arity() != entry->dims)) {
    throw DataError(path + ": expected " + std::to_string(entry->rows) + " rows x " + std::to_string(entry->dims) +
                    " attributes, found " + std::to_string(table.rows.size()) + " x " +
                    std::to_string(table.arity()));
  }
  LoadedData loaded;
  loaded.name = std::move(name);
  loaded.path = path;
  loaded.columns = std::move(columns);
  loaded.registry_k = entry != nullptr ? entry->k : 0;
  loaded.raw = io::to_dataset(table);
  loaded.normalization = io::fit_normalization(loaded.raw);
  loaded.normalized = io::apply_normalization(loaded.raw, loaded.normalization);
  return loaded;
}

LoadedData load_input(const DataFlags& flags, const registry::Registry& reg) {
  std::vector<std::size_t> columns;
  if (!flags.columns.empty()) columns = io::parse_column_list(flags.columns);
  if (!flags.dataset.empty()) {
    const registry::Entry& entry = registry_entry(reg, flags.dataset);
    if (columns.empty()) columns = entry.columns;
    return load_file(reg.path_of(entry), entry.name, columns, &entry);
  }
  return load_file(flags.data, dataset_label(flags.data), columns, nullptr);
}

std::size_t resolve_k(std::size_t requested, const LoadedData& data) {
  const std::size_t k = requested != 0 ? requested : data.registry_k;
  if (k == 0) throw UsageError("--k is required for " + data.name);
  return k;
}

struct FitOutcome {
  ClusterModel model;  // prototypes in normalized coordinates
  double error = 0.0;
  double seconds = 0.0;
};

ClusterModel to_normalized_space(ClusterModel model, const io::NormalizationSpec& spec) {
  for (Point& p : model.prototypes) p = spec.apply(p);
  return model;
}

FitOutcome run_fit(const LoadedData& data, const AlgoConfig& config, bool raw_space) {
  FitOutcome outcome;
  const Dataset& space = raw_space ? data.raw : data.normalized;
  const auto start = std::chrono::steady_clock::now();
  ClusterModel model = fit(space, config);
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.model = raw_space ? to_normalized_space(std::move(model), data.normalization) : std::move(model);
  outcome.error = eval::clustering_error(outcome.model, data.normalized);
  return outcome;
}

json config_json(const AlgoConfig& c, bool raw_space) {
  return json{{"algorithm", to_string(c.algorithm)},
              {"k", c.k},
              {"seed", c.seed},
              {"max_iter", c.max_iter},
              {"tol", c.tol},
              {"fuzzifier", c.fuzzifier},
              {"reassign", c.reassign},
              {"raw_space", raw_space},
              {"empty_cluster_policy", "reseed_farthest"},
              {"kernels", c.backend == Backend::openmp ? "openmp" : "serial"}};
}

json fit_json(const LoadedData& data, const AlgoConfig& config, bool raw_space, const FitOutcome& outcome,
              bool include_timing) {
  json prototypes = json::array();
  for (const Point& p : outcome.model.prototypes) prototypes.push_back(p);
  return json{{"config", config_json(config, raw_space)},
              {"dataset",
               {{"name", data.name},
                {"path", data.path},
                {"columns", data.columns},
                {"points", data.normalized.size()},
                {"dim", data.normalized.dim()}}},
              {"iterations", outcome.model.iterations_run},
              {"converged", outcome.model.converged},
              {"error", outcome.error},
              {"objective", outcome.model.objective},
              {"wall_clock_s", include_timing ? outcome.seconds : 0.0},
              {"prototypes", std::move(prototypes)},
              {"labels", outcome.model.assignment.labels}};
}

void write_text(const std::string& path, const std::string& text) {
  if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  file << text;
  if (!file) throw DataError("error writing '" + path + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// ---- fit ----------------------------------------------------------------

struct FitCommand {
  AlgoFlags algo;
  DataFlags data;
  std::string out;
  bool no_timing = false;

  void add_to(CLI::App& app) {
    app.add_option("--algo", algo.algo, "Algorithm")->check(CLI::IsMember({"pocs", "kmeans", "fcm"}));
    algo.add_to(app);
    data.add_to(app);
    app.add_option("--out", out, "Write the JSON here instead of standard output");
    app.add_flag("--no-timing", no_timing, "Report wall-clock as 0 for byte-reproducible output");
  }

  int run(std::ostream& stdout_stream) const {
    const Algorithm algorithm = parse_algorithm(algo.algo);
    algo.validate({algorithm});
    data.validate();
    const registry::Registry reg = registry::Registry::load_default();
    const LoadedData loaded = load_input(data, reg);
    const AlgoConfig config = algo.config_for(algorithm, resolve_k(algo.k, loaded));
    const FitOutcome outcome = run_fit(loaded, config, algo.raw_space);
    const std::string text = fit_json(loaded, config, algo.raw_space, outcome, !no_timing).dump(2) + "\n";
    if (out.empty()) {
      stdout_stream << text;
    } else {
      write_text(out, text);
    }
    return kExitOk;
  }
};

// ---- bench --------------------------------------------------------------

struct BenchCommand {
  AlgoFlags algo;
  std::string datasets;
  std::vector<std::string> data_files;
  std::string columns;
  std::string algos = "pocs,kmeans,fcm";
  std::size_t runs = 20;
  std::string out = ".";
  bool timing_sequential = false;
  bool no_timing = false;

  void add_to(CLI::App& app) {
    algo.add_to(app);
    app.add_option("--datasets", datasets, "Comma-separated registered names (default: all registered)");
    app.add_option("--data", data_files, "Point file to benchmark instead of registered datasets (repeatable)");
    app.add_option("--columns", columns, "Coordinate columns for --data files");
    app.add_option("--algos", algos, "Comma-separated algorithms");
    app.add_option("--runs", runs, "Seeded runs per algorithm and dataset");
    app.add_option("--out", out, "Directory for bench.csv and bench.json");
    app.add_flag("--timing-sequential", timing_sequential, "Run every fit on one thread, one after another");
    app.add_flag("--no-timing", no_timing, "Report times as 0 for byte-reproducible output");
  }

  int run(std::ostream& stdout_stream) const {
    std::vector<Algorithm> algorithms;
    for (const std::string& name : split_list(algos)) {
      try {
        algorithms.push_back(parse_algorithm(name));
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
    if (algorithms.empty()) throw UsageError("--algos is empty");
    if (runs < 1) throw UsageError("--runs must be at least 1");
    if (!datasets.empty() && !data_files.empty()) throw UsageError("--datasets and --data are mutually exclusive");
    if (!data_files.empty() && algo.k == 0) throw UsageError("--k is required with --data");
    algo.validate(algorithms);
    std::vector<std::size_t> column_list;
    if (!columns.empty()) column_list = io::parse_column_list(columns);

    const registry::Registry reg = registry::Registry::load_default();
    struct Source {
      std::string name;
      std::string path;
      std::vector<std::size_t> columns;
      const registry::Entry* entry;
    };
    std::vector<Source> sources;
    if (!data_files.empty()) {
      for (const std::string& path : data_files) sources.push_back({dataset_label(path), path, column_list, nullptr});
    } else {
      std::vector<std::string> names = split_list(datasets);
      if (names.empty()) {
        for (const registry::Entry& e : reg.entries()) names.push_back(e.name);
      }
      for (const std::string& name : names) {
        const registry::Entry& entry = registry_entry(reg, name);
        sources.push_back({entry.name, reg.path_of(entry), column_list.empty() ? entry.columns : column_list, &entry});
      }
    }

    std::vector<std::string> missing;
    for (const Source& s : sources) {
      if (!fs::exists(s.path)) missing.push_back(s.path);
    }
    if (!missing.empty()) {
      std::string message = "missing dataset file(s):";
      for (const std::string& path : missing) message += "\n  " + path;
      throw DataError(message);
    }

    std::vector<eval::AggregateReport> all;
    eval::ExperimentOptions options;
    options.sequential = timing_sequential;
    for (const Source& s : sources) {
      const LoadedData loaded = load_file(s.path, s.name, s.columns, s.entry);
      const std::size_t k = resolve_k(algo.k, loaded);
      std::vector<eval::AlgorithmEntry> entries;
      for (Algorithm a : algorithms) {
        eval::AlgorithmEntry entry = eval::builtin_algorithm(algo.config_for(a, k));
        if (algo.raw_space) {
          entry.score_data = &loaded.normalized;
          const io::NormalizationSpec spec = loaded.normalization;
          entry.score_transform = [spec](std::span<const double> p) { return spec.apply(p); };
        }
        entries.push_back(std::move(entry));
      }
      const Dataset& space = algo.raw_space ? loaded.raw : loaded.normalized;
      auto reports = eval::run_experiment(space, loaded.name, entries, runs, algo.seed, options);
      all.insert(all.end(), std::make_move_iterator(reports.begin()), std::make_move_iterator(reports.end()));
    }

    write_text((fs::path(out) / "bench.csv").string(), eval::to_csv(all, !no_timing));
    write_text((fs::path(out) / "bench.json").string(), eval::to_json(all, !no_timing));
    print_tables(stdout_stream, all, algorithms, sources.size());
    return kExitOk;
  }

  void print_tables(std::ostream& os, const std::vector<eval::AggregateReport>& all,
                    const std::vector<Algorithm>& algorithms, std::size_t dataset_count) const {
    auto cell = [](double mean, double std) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(1) << mean << " ± " << std << std::setprecision(1);
      return s.str();
    };
    os << "Clustering error, mean ± std over " << runs << " run(s), normalized data\n";
    os << std::left << std::setw(14) << "dataset";
    for (Algorithm a : algorithms) os << std::setw(20) << to_string(a);
    os << '\n';
    for (std::size_t d = 0; d < dataset_count; ++d) {
      os << std::setw(14) << all[d * algorithms.size()].dataset;
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        const auto& r = all[d * algorithms.size() + a];
        os << std::setw(21) << cell(r.mean_error, r.std_error);
      }
      os << '\n';
    }
    if (no_timing) return;
    os << "\nMean fit time (s)\n" << std::setw(14) << "dataset";
    for (Algorithm a : algorithms) os << std::setw(20) << to_string(a);
    os << '\n';
    for (std::size_t d = 0; d < dataset_count; ++d) {
      os << std::setw(14) << all[d * algorithms.size()].dataset;
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(4) << all[d * algorithms.size() + a].mean_time;
        os << std::setw(20) << t.str();
      }
      os << '\n';
    }
  }
};

// ---- plot ---------------------------------------------------------------

struct PlotCommand {
  std::string fit_file;
  AlgoFlags algo;
  DataFlags data;
  std::string out;

  void add_to(CLI::App& app) {
    app.add_option("--fit", fit_file, "JSON written by `fit`");
    app.add_option("--algo", algo.algo, "Algorithm when fitting here")->check(CLI::IsMember({"pocs", "kmeans", "fcm"}));
    algo.add_to(app);
    data.add_to(app);
    app.add_option("--out", out, "SVG output path")->required();
  }

  int run(std::ostream&) const {
    const registry::Registry reg = registry::Registry::load_default();
    std::vector<Point> prototypes;
    std::vector<std::size_t> labels;
    LoadedData loaded;
    if (!fit_file.empty()) {
      if (!data.data.empty() || !data.dataset.empty()) throw UsageError("--fit and --data/--dataset are exclusive");
      std::ifstream in(fit_file);
      if (!in) throw DataError("cannot open '" + fit_file + "'");
      json doc;
      try {
        doc = json::parse(in);
        DataFlags from_fit;
        from_fit.data = doc.at("dataset").at("path").get<std::string>();
        loaded = load_file(from_fit.data, doc.at("dataset").at("name").get<std::string>(),
                           doc.at("dataset").at("columns").get<std::vector<std::size_t>>(), nullptr);
        prototypes = doc.at("prototypes").get<std::vector<Point>>();
        labels = doc.at("labels").get<std::vector<std::size_t>>();
      } catch (const json::exception& e) {
        throw DataError(fit_file + ": not a fit result (" + e.what() + ")");
      }
      if (labels.size() != loaded.normalized.size()) throw DataError("fit labels do not match the dataset size");
    } else {
      const Algorithm algorithm = parse_algorithm(algo.algo);
      algo.validate({algorithm});
      data.validate();
      loaded = load_input(data, reg);
      const AlgoConfig config = algo.config_for(algorithm, resolve_k(algo.k, loaded));
      FitOutcome outcome = run_fit(loaded, config, algo.raw_space);
      prototypes = std::move(outcome.model.prototypes);
      labels = std::move(outcome.model.assignment.labels);
    }
    if (loaded.normalized.dim() != 2) throw DataError("plotting supports 2-D datasets only");
    for (const Point& p : prototypes) {
      if (p.size() != 2) throw DataError("plotting supports 2-D datasets only");
    }
    write_text(out, svg::cluster_plot(loaded.normalized, prototypes, labels));
    return kExitOk;
  }
};

// ---- demo-pocs ----------------------------------------------------------

struct Scene {
  std::vector<geometry::ConvexSet> sets;
  std::vector<double> weights;
  Point start;
};

std::map<std::string, Scene> builtin_scenes() {
  using namespace geometry;
  std::map<std::string, Scene> scenes;
  scenes["intersecting-balls"] = {{make_ball({0.0, 0.0}, 1.0), make_ball({1.0, 0.0}, 1.0)}, {0.5, 0.5}, {5.0, 5.0}};
  scenes["disjoint-balls"] = {
      {make_ball({0.0, 0.0}, 1.0), make_ball({4.0, 0.0}, 1.0), make_ball({2.0, 3.5}, 0.75)},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {6.0, 5.0}};
  scenes["three-singletons"] = {
      {make_singleton({0.0, 0.0}), make_singleton({4.0, 0.0}), make_singleton({2.0, 3.0})},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {5.0, 5.0}};
  return scenes;
}

std::string point_text(const Point& p) {
  std::ostringstream s;
  s << std::setprecision(10) << '(';
  for (std::size_t i = 0; i < p.size(); ++i) s << (i == 0 ? "" : ", ") << p[i];
  s << ')';
  return s.str();
}

struct DemoCommand {
  std::string scene;
  std::string out;
  std::size_t max_iter = 10'000;
  double tol = 1e-9;

  void add_to(CLI::App& app) {
    app.add_option("--scene", scene, "intersecting-balls, disjoint-balls or three-singletons")->required();
    app.add_option("--out", out, "Optional SVG of the iterate paths");
    app.add_option("--max-iter", max_iter, "Iteration cap");
    app.add_option("--tol", tol, "Stopping tolerance");
  }

  int run(std::ostream& os) const {
    const auto scenes = builtin_scenes();
    const auto found = scenes.find(scene);
    if (found == scenes.end()) throw UsageError("unknown scene '" + scene + "'");
    if (!(tol > 0.0) || max_iter < 1) throw UsageError("--tol and --max-iter must be positive");
    const Scene& s = found->second;
    const geometry::PocsOptions options{max_iter, tol};

    const auto alternating = geometry::alternating_pocs(s.sets, s.start, options);
    const auto parallel = geometry::parallel_pocs(s.sets, s.weights, s.start, options);

    // Gradient of sum_i w_i ||x - P_i(x)||^2 is 2 sum_i w_i (x - P_i(x)).
    const Point& x = parallel.final_point();
    Point gradient(x.size(), 0.0);
    for (std::size_t i = 0; i < s.sets.size(); ++i) {
      const Point p = geometry::project(s.sets[i], x);
      for (std::size_t c = 0; c < x.size(); ++c) gradient[c] += 2.0 * s.weights[i] * (x[c] - p[c]);
    }
    double gradient_norm = 0.0;
    for (double g : gradient) gradient_norm += g * g;

    os << "scene: " << scene << '\n';
    os << "alternating: projections=" << alternating.projections << " converged=" << std::boolalpha
       << alternating.converged << " cycle_detected=" << alternating.cycle_detected
       << " final=" << point_text(alternating.final_point()) << '\n';
    os << "parallel: iterations=" << parallel.projections << " converged=" << parallel.converged
       << " final=" << point_text(x) << " weighted_sq_distance=" << std::setprecision(10)
       << geometry::weighted_squared_distance(s.sets, s.weights, x) << " gradient_norm=" << std::sqrt(gradient_norm)
       << '\n';
    if (!out.empty()) {
      write_text(out, svg::pocs_scene(s.sets, {{alternating.iterates, "#1f77b4", "alternating"},
                                               {parallel.iterates, "#ff7f0e", "parallel"}}));
    }
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"POCS-based clustering with K-Means and FCM baselines"};
  app.name("pocs");
  app.require_subcommand(1);

  FitCommand fit_cmd;
  BenchCommand bench_cmd;
  PlotCommand plot_cmd;
  DemoCommand demo_cmd;
  auto* fit_app = app.add_subcommand("fit", "Fit one model and print it as JSON");
  fit_cmd.add_to(*fit_app);
  auto* bench_app = app.add_subcommand("bench", "Repeated seeded runs; writes bench.csv and bench.json");
  bench_cmd.add_to(*bench_app);
  auto* plot_app = app.add_subcommand("plot", "SVG scatter of a clustering");
  plot_cmd.add_to(*plot_app);
  auto* demo_app = app.add_subcommand("demo-pocs", "Alternating and parallel POCS on a built-in scene");
  demo_cmd.add_to(*demo_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    const CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == fit_app) return fit_cmd.run(out);
    if (chosen == bench_app) return bench_cmd.run(out);
    if (chosen == plot_app) return plot_cmd.run(out);
    return demo_cmd.run(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << chosen->help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pocs::cli
