#include "lhmine/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <stdexcept>

namespace lhmine::cli {

std::string sha256_hex(std::string_view content) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(content.data(), content.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

RunManifest::RunManifest(std::string command, std::filesystem::path out_dir)
    : out_dir_(std::move(out_dir)) {
  meta_["tool"] = "lhmine";
  meta_["version"] = kToolVersion;
  meta_["command"] = std::move(command);
  meta_["out_dir"] = out_dir_.string();
  std::filesystem::create_directories(out_dir_);
}

void RunManifest::emit(const std::string& name, std::string_view content) {
  write_file_atomic(out_dir_ / name, content);
  nlohmann::ordered_json entry;
  entry["file"] = name;
  entry["bytes"] = content.size();
  entry["sha256"] = sha256_hex(content);
  artifacts_.push_back(std::move(entry));
}

void RunManifest::finish() {
  auto doc = meta_;
  doc["artifacts"] = artifacts_;
  write_file_atomic(out_dir_ / "manifest.json", doc.dump(2) + "\n");
}

}  // namespace lhmine::cli
