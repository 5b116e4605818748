#include "pocs/registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "pocs/data_io.hpp"
#include "pocs/types.hpp"

#ifndef POCS_DEFAULT_REGISTRY
#define POCS_DEFAULT_REGISTRY "data/datasets.cfg"
#endif

namespace pocs::registry {

namespace fs = std::filesystem;

Registry Registry::parse(const std::string& text, std::string root) {
  Registry reg;
  reg.root_ = std::move(root);
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Entry e;
    std::string columns;
    if (!(fields >> e.name)) continue;
    if (!(fields >> e.file >> e.rows >> e.dims >> columns >> e.k >> e.sha256)) {
      throw ParseError("dataset registry", line_no, "expected: name file rows dims columns k sha256");
    }
    if (columns != "-") e.columns = io::parse_column_list(columns);
    if (e.sha256 == "-") e.sha256.clear();
    reg.entries_.push_back(std::move(e));
  }
  return reg;
}

Registry Registry::load(const std::string& path, std::string root) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset registry '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), std::move(root));
}

Registry Registry::load_default() {
  const char* env = std::getenv("POCS_DATA_DIR");
  if (env != nullptr && *env != '\0') {
    const fs::path override_file = fs::path(env) / "datasets.cfg";
    const std::string registry_file = fs::exists(override_file) ? override_file.string() : POCS_DEFAULT_REGISTRY;
    return load(registry_file, env);
  }
  return load(POCS_DEFAULT_REGISTRY, fs::path(POCS_DEFAULT_REGISTRY).parent_path().string());
}

const Entry* Registry::find(const std::string& name) const {
  for (const Entry& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::string Registry::path_of(const Entry& entry) const { return (fs::path(root_) / entry.file).string(); }

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256 unavailable");
  char buffer[1 << 16];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace pocs::registry
