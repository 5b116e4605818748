#include "pocs/evaluation.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>

#include "json.hpp"

#include "pocs/baselines.hpp"

namespace pocs::eval {

double clustering_error(const ClusterModel& model, const Dataset& dataset) {
  const auto& labels = model.assignment.labels;
  if (labels.size() != dataset.size()) throw ContractError("assignment size differs from dataset size");
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) total += distance(model.prototypes.at(labels[i]), dataset.point(i));
  return total;
}

AlgorithmEntry builtin_algorithm(const AlgoConfig& config) {
  AlgorithmEntry entry;
  entry.name = to_string(config.algorithm);
  entry.config = config;
  entry.fit = [](const Dataset& data, const AlgoConfig& cfg) { return pocs::fit(data, cfg); };
  return entry;
}

void RunningStats::add(double value) noexcept {
  ++count_;
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (value - mean_);
}

double RunningStats::population_std() const noexcept {
  if (count_ < 2) return 0.0;
  return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_)));
}

namespace {

RunReport run_once(const Dataset& dataset, const std::string& dataset_name, const AlgorithmEntry& entry,
                   std::uint64_t seed) {
  AlgoConfig config = entry.config;
  config.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  ClusterModel model = entry.fit(dataset, config);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.algorithm = entry.name;
  report.dataset = dataset_name;
  report.seed = seed;
  report.objective = model.objective;
  report.iterations = model.iterations_run;
  report.converged = model.converged;
  report.wall_clock_fit = std::chrono::duration<double>(stop - start).count();
  if (entry.score_data != nullptr) {
    if (entry.score_transform) {
      for (Point& p : model.prototypes) p = entry.score_transform(p);
    }
    report.error = clustering_error(model, *entry.score_data);
  } else {
    report.error = clustering_error(model, dataset);
  }
  return report;
}

}  // namespace

std::vector<AggregateReport> run_experiment(const Dataset& dataset, const std::string& dataset_name,
                                            const std::vector<AlgorithmEntry>& algorithms, std::size_t runs,
                                            std::uint64_t base_seed, const ExperimentOptions& options) {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  std::vector<AggregateReport> out;
  for (const AlgorithmEntry& entry : algorithms) {
    std::vector<RunReport> reports(runs);
    std::vector<std::exception_ptr> failures(runs);
    const auto count = static_cast<std::ptrdiff_t>(runs);
#pragma omp parallel for schedule(dynamic) if (!options.sequential)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
      try {
        reports[r] = run_once(dataset, dataset_name, entry, base_seed + static_cast<std::uint64_t>(r));
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
    for (std::size_t r = 0; r < runs; ++r) {
      if (!failures[r]) continue;
      std::string reason = "unknown error";
      try {
        std::rethrow_exception(failures[r]);
      } catch (const std::exception& e) {
        reason = e.what();
      } catch (...) {
      }
      throw std::runtime_error(entry.name + " on " + dataset_name + " with seed " +
                               std::to_string(base_seed + r) + " failed: " + reason);
    }

    AggregateReport agg;
    agg.algorithm = entry.name;
    agg.dataset = dataset_name;
    agg.runs = runs;
    RunningStats errors;
    double time_total = 0.0;
    for (const RunReport& r : reports) {
      errors.add(r.error);
      time_total += r.wall_clock_fit;
    }
    agg.mean_error = errors.mean();
    agg.std_error = errors.population_std();
    agg.mean_time = time_total / static_cast<double>(runs);
    agg.reports = std::move(reports);
    out.push_back(std::move(agg));
  }
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string to_csv(const std::vector<AggregateReport>& reports, bool include_timing) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const AggregateReport& r : reports) {
    out << r.algorithm << ',' << r.dataset << ',' << r.runs << ',' << format_double(r.mean_error) << ','
        << format_double(r.std_error) << ',' << format_double(include_timing ? r.mean_time : 0.0) << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<AggregateReport>& reports, bool include_timing) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const AggregateReport& r : reports) {
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const RunReport& run : r.reports) {
      runs.push_back({{"seed", run.seed},
                      {"error", run.error},
                      {"objective", run.objective},
                      {"iterations", run.iterations},
                      {"converged", run.converged},
                      {"wall_clock_fit_s", include_timing ? run.wall_clock_fit : 0.0}});
    }
    rows.push_back({{"algorithm", r.algorithm},
                    {"dataset", r.dataset},
                    {"runs", r.runs},
                    {"mean_error", r.mean_error},
                    {"std_error", r.std_error},
                    {"mean_time_s", include_timing ? r.mean_time : 0.0},
                    {"per_run", std::move(runs)}});
  }
  return rows.dump(2) + "\n";
}

}  // namespace pocs::eval
