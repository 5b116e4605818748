#ifndef POCS_DATA_IO_HPP
#define POCS_DATA_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pocs/types.hpp"

namespace pocs::io {

enum class Delimiter { whitespace, comma };

struct RawTable {
  std::vector<std::vector<double>> rows;
  std::string source_path;
  Delimiter delimiter = Delimiter::whitespace;

  std::size_t arity() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct LoadOptions {
  std::optional<Delimiter> delimiter;   // auto-detect when empty
  std::vector<std::size_t> columns;     // keep only these columns, in order; empty keeps all
};

/// One point per non-blank line. Without an explicit delimiter each file is
/// read as whitespace-separated and, if that fails, as comma-separated.
/// Throws IoError for unreadable files and ParseError (with the 1-based line)
/// for ragged rows, non-numeric or non-finite fields, or a missing column.
RawTable load_dataset(const std::string& path, const LoadOptions& options = {});

/// Same parser over an in-memory buffer; `source_name` is used in messages.
RawTable parse_table(const std::string& text, const std::string& source_name, const LoadOptions& options = {});

std::vector<std::size_t> parse_column_list(const std::string& text);

struct NormalizationSpec {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dim() const { return min.size(); }
  /// Raw -> [0, 1]; constant dimensions map to 0.
  Point apply(std::span<const double> raw) const;
  /// [0, 1] -> raw; constant dimensions map back to their constant.
  Point invert(std::span<const double> normalized) const;
};

Dataset to_dataset(const RawTable& table);
NormalizationSpec fit_normalization(const Dataset& data);
std::pair<Dataset, NormalizationSpec> normalize(const RawTable& table);
Dataset apply_normalization(const Dataset& data, const NormalizationSpec& spec);
Dataset denormalize(const Dataset& normalized, const NormalizationSpec& spec);

struct Blobs {
  Dataset data;
  std::vector<Point> centers;
  std::vector<std::size_t> labels;  // generating cluster of each point
};

/// k isotropic Gaussian clusters, centers drawn uniformly in [0,1]^dim at
/// least `separation` apart. Points are grouped by cluster. Throws
/// ConfigError when the centers cannot be placed.
Blobs make_blobs(std::size_t k, std::size_t points_per_cluster, std::size_t dim, double spread,
                 double separation, std::uint64_t seed);

}  // namespace pocs::io

#endif  // POCS_DATA_IO_HPP
