#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mcs::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view data);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

struct FileRecord {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes files into one output directory and records their hashes.
/// File names must be plain names: nothing is written outside the directory.
class OutputSink {
 public:
  explicit OutputSink(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path write(const std::string& name, const std::string& content);
  const std::vector<FileRecord>& files() const { return files_; }

  /// manifest.json: tool/version, command, seed, resolved config, file
  /// hashes, start and finish times. Not itself listed in `files`.
  void write_manifest(const std::string& command, std::uint64_t seed, const nlohmann::json& config,
                      const std::string& started);

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> files_;
};

}  // namespace mcs::cli
