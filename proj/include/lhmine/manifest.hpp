#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lhmine::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

std::string sha256_hex(std::string_view content);

/// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Run record for one command. Every artifact written through
/// emit() is listed with its size and checksum.
class RunManifest {
 public:
  RunManifest(std::string command, std::filesystem::path out_dir);

  nlohmann::ordered_json& meta() { return meta_; }

  /// Writes out_dir/name atomically and records it.
  void emit(const std::string& name, std::string_view content);

  /// Writes out_dir/manifest.json.
  void finish();

  const std::filesystem::path& out_dir() const { return out_dir_; }

 private:
  std::filesystem::path out_dir_;
  nlohmann::ordered_json meta_;
  nlohmann::ordered_json artifacts_ = nlohmann::ordered_json::array();
};

}  // namespace lhmine::cli
