#ifndef POCS_REGISTRY_HPP
#define POCS_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

namespace pocs::registry {

/// One benchmark dataset: where its file lives under the data root, which
/// columns hold coordinates, and what the loaded table must look like.
struct Entry {
  std::string name;
  std::string file;
  std::size_t rows = 0;
  std::size_t dims = 0;
  std::vector<std::size_t> columns;  // empty: all columns
  std::size_t k = 0;                 // reference cluster count
  std::string sha256;                // empty: not pinned
};

class Registry {
 public:
  /// Parses whitespace-separated lines
  ///   name file rows dims columns k sha256
  /// where columns and sha256 may be "-". '#' starts a comment.
  static Registry parse(const std::string& text, std::string root);
  static Registry load(const std::string& path, std::string root);

  /// Registry from $POCS_DATA_DIR/datasets.cfg when present, otherwise the
  /// built-in file. Files resolve against $POCS_DATA_DIR when set.
  static Registry load_default();

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const std::string& root() const noexcept { return root_; }
  const Entry* find(const std::string& name) const;
  std::string path_of(const Entry& entry) const;

 private:
  std::vector<Entry> entries_;
  std::string root_;
};

/// Lower-case hex SHA-256 of a file's bytes. Throws IoError when unreadable.
std::string sha256_file(const std::string& path);

}  // namespace pocs::registry

#endif  // POCS_REGISTRY_HPP
