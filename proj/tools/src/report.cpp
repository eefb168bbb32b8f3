#include "mcs/cli/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "mcs/errors.hpp"

namespace mcs::cli {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputSink::OutputSink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path OutputSink::write(const std::string& name, const std::string& content) {
  const std::filesystem::path rel(name);
  if (name.empty() || rel.has_parent_path() || rel.is_absolute() || name == "." || name == "..") {
    throw std::invalid_argument("output file name must be a plain name: '" + name + "'");
  }
  const std::filesystem::path path = dir_ / rel;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed to write " + path.string());
  files_.push_back({name, sha256_hex(content), content.size()});
  return path;
}

void OutputSink::write_manifest(const std::string& command, std::uint64_t seed, const nlohmann::json& config,
                                const std::string& started) {
  nlohmann::json files = nlohmann::json::array();
  for (const FileRecord& f : files_) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  const nlohmann::json manifest{{"tool", "mcs"},
                                {"version", kToolVersion},
                                {"command", command},
                                {"seed", seed},
                                {"config", config},
                                {"files", files},
                                {"started_utc", started},
                                {"finished_utc", utc_timestamp()}};
  std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed to write manifest");
}

}  // namespace mcs::cli
