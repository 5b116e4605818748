#include "pocs/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "pocs/rng.hpp"

namespace pocs::io {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (field.empty()) throw ParseError(line, "empty field");
  // from_chars rejects a leading '+', which some exporters emit.
  std::string_view digits = field.front() == '+' ? field.substr(1) : field;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size()) {
    throw ParseError(line, "non-numeric field '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, "non-finite field '" + std::string(field) + "'");
  return value;
}

std::vector<double> split_row(std::string_view line_text, Delimiter delimiter, std::size_t line) {
  std::vector<double> row;
  if (delimiter == Delimiter::whitespace) {
    std::size_t pos = 0;
    while (pos < line_text.size()) {
      while (pos < line_text.size() && is_blank(line_text[pos])) ++pos;
      if (pos == line_text.size()) break;
      std::size_t end = pos;
      while (end < line_text.size() && !is_blank(line_text[end])) ++end;
      row.push_back(parse_field(line_text.substr(pos, end - pos), line));
      pos = end;
    }
  } else {
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line_text.find(',', pos);
      row.push_back(parse_field(line_text.substr(pos, comma - pos), line));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return row;
}

RawTable parse_with(const std::string& text, const std::string& source_name, Delimiter delimiter,
                    const std::vector<std::size_t>& columns) {
  RawTable table;
  table.source_path = source_name;
  table.delimiter = delimiter;
  std::size_t arity = 0;
  std::size_t line = 0;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t newline = rest.find('\n');
    const std::string_view line_text = rest.substr(0, newline);
    rest = newline == std::string_view::npos ? std::string_view{} : rest.substr(newline + 1);
    ++line;
    if (trim(line_text).empty()) continue;

    std::vector<double> row = split_row(line_text, delimiter, line);
    if (table.rows.empty()) {
      arity = row.size();
    } else if (row.size() != arity) {
      throw ParseError(line, "expected " + std::to_string(arity) + " fields, found " + std::to_string(row.size()));
    }
    if (!columns.empty()) {
      std::vector<double> selected;
      selected.reserve(columns.size());
      for (std::size_t c : columns) {
        if (c >= row.size()) {
          throw ParseError(line, "column " + std::to_string(c) + " out of range (row has " +
                                     std::to_string(row.size()) + " fields)");
        }
        selected.push_back(row[c]);
      }
      row = std::move(selected);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw ParseError(line, "no data rows");
  return table;
}

}  // namespace

RawTable parse_table(const std::string& text, const std::string& source_name, const LoadOptions& options) {
  if (options.delimiter) return parse_with(text, source_name, *options.delimiter, options.columns);
  try {
    return parse_with(text, source_name, Delimiter::whitespace, options.columns);
  } catch (const ParseError&) {
    if (text.find(',') == std::string::npos) throw;
  }
  return parse_with(text, source_name, Delimiter::comma, options.columns);
}

RawTable load_dataset(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  try {
    return parse_table(buffer.str(), path, options);
  } catch (const ParseError& e) {
    throw ParseError(path, e.line(), e.detail());
  }
}

std::vector<std::size_t> parse_column_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw ConfigError("bad column list '" + text + "'");
    }
    out.push_back(value);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty column list");
  return out;
}

Point NormalizationSpec::apply(std::span<const double> raw) const {
  Point out(raw.size());
  for (std::size_t c = 0; c < raw.size(); ++c) {
    const double range = max[c] - min[c];
    out[c] = range > 0.0 ? std::clamp((raw[c] - min[c]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

Point NormalizationSpec::invert(std::span<const double> normalized) const {
  Point out(normalized.size());
  for (std::size_t c = 0; c < normalized.size(); ++c) out[c] = min[c] + normalized[c] * (max[c] - min[c]);
  return out;
}

Dataset to_dataset(const RawTable& table) {
  if (table.rows.empty()) throw ContractError("table has no rows");
  const std::size_t dim = table.arity();
  std::vector<double> coords;
  coords.reserve(table.rows.size() * dim);
  for (const auto& row : table.rows) {
    if (row.size() != dim) throw ContractError("table rows have different arity");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return Dataset(std::move(coords), dim);
}

NormalizationSpec fit_normalization(const Dataset& data) {
  NormalizationSpec spec;
  auto first = data.point(0);
  spec.min.assign(first.begin(), first.end());
  spec.max.assign(first.begin(), first.end());
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto p = data.point(i);
    for (std::size_t c = 0; c < data.dim(); ++c) {
      spec.min[c] = std::min(spec.min[c], p[c]);
      spec.max[c] = std::max(spec.max[c], p[c]);
    }
  }
  return spec;
}

Dataset apply_normalization(const Dataset& data, const NormalizationSpec& spec) {
  if (spec.dim() != data.dim()) throw ContractError("normalization dimension differs from dataset");
  std::vector<double> coords;
  coords.reserve(data.size() * data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Point p = spec.apply(data.point(i));
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Dataset(std::move(coords), data.dim());
}

std::pair<Dataset, NormalizationSpec> normalize(const RawTable& table) {
  Dataset raw = to_dataset(table);
  NormalizationSpec spec = fit_normalization(raw);
  return {apply_normalization(raw, spec), std::move(spec)};
}

Dataset denormalize(const Dataset& normalized, const NormalizationSpec& spec) {
  if (spec.dim() != normalized.dim()) throw ContractError("normalization dimension differs from dataset");
  std::vector<double> coords;
  coords.reserve(normalized.size() * normalized.dim());
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    const Point p = spec.invert(normalized.point(i));
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Dataset(std::move(coords), normalized.dim());
}

Blobs make_blobs(std::size_t k, std::size_t points_per_cluster, std::size_t dim, double spread, double separation,
                 std::uint64_t seed) {
  if (k < 1 || points_per_cluster < 1 || dim < 1) throw ConfigError("blob counts must be at least 1");
  if (!(spread > 0.0)) throw ConfigError("spread must be positive");
  if (!(separation > 0.0)) throw ConfigError("separation must be positive");
  constexpr std::size_t kAttemptsPerCenter = 10'000;

  Rng rng(seed);
  Blobs blobs;
  while (blobs.centers.size() < k) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kAttemptsPerCenter && !placed; ++attempt) {
      Point candidate(dim);
      for (double& v : candidate) v = rng.uniform();
      placed = std::all_of(blobs.centers.begin(), blobs.centers.end(),
                           [&](const Point& c) { return distance(c, candidate) >= separation; });
      if (placed) blobs.centers.push_back(std::move(candidate));
    }
    if (!placed) {
      throw ConfigError("cannot place " + std::to_string(k) + " centers " + std::to_string(separation) +
                        " apart in the unit cube");
    }
  }

  std::vector<double> coords;
  coords.reserve(k * points_per_cluster * dim);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t p = 0; p < points_per_cluster; ++p) {
      for (std::size_t c = 0; c < dim; ++c) coords.push_back(blobs.centers[j][c] + spread * rng.normal());
      blobs.labels.push_back(j);
    }
  }
  blobs.data = Dataset(std::move(coords), dim);
  return blobs;
}

}  // namespace pocs::io
