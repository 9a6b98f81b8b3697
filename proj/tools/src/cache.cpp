#include "skdv_cli/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

namespace skdv::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string canonical(const nlohmann::json& request) { return request.dump(); }

ArtifactCache::ArtifactCache(std::string dir, int schema) : schema_(schema) {
  if (dir.empty()) {
    if (const char* env = std::getenv("SKDV_CACHE_DIR"); env && *env) dir = env;
    else if (const char* home = std::getenv("HOME"); home && *home) dir = std::string(home) + "/.cache/skdv";
  }
  if (dir.empty()) return;
  dir_ = dir;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    std::cerr << "warning: cache directory " << dir_ << " unusable, running uncached\n";
    return;
  }
  enabled_ = true;
}

std::string ArtifactCache::key(const nlohmann::json& request) const {
  return sha256_hex(canonical(request) + "|schema=" + std::to_string(schema_));
}

namespace {

std::optional<std::string> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::optional<std::string> ArtifactCache::load(const nlohmann::json& request) const {
  if (!enabled_) return std::nullopt;
  std::string k = key(request);
  auto payload = slurp(dir_ / (k + ".json"));
  auto digest = slurp(dir_ / (k + ".sha256"));
  if (!payload || !digest) return std::nullopt;
  if (sha256_hex(*payload) != *digest) return std::nullopt;
  return payload;
}

bool ArtifactCache::store(const nlohmann::json& request, const std::string& payload) const {
  if (!enabled_) return false;
  std::string k = key(request);
  // Write to temporaries, then rename, so a concurrent reader never sees half a file.
  fs::path tmp = dir_ / (k + ".json.tmp");
  fs::path tmpd = dir_ / (k + ".sha256.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    std::ofstream outd(tmpd, std::ios::binary | std::ios::trunc);
    if (!out || !outd) {
      std::cerr << "warning: cannot write cache entry in " << dir_ << ", result not cached\n";
      return false;
    }
    out << payload;
    outd << sha256_hex(payload);
  }
  std::error_code ec;
  fs::rename(tmp, dir_ / (k + ".json"), ec);
  if (!ec) fs::rename(tmpd, dir_ / (k + ".sha256"), ec);
  if (ec) {
    std::cerr << "warning: cannot write cache entry in " << dir_ << ", result not cached\n";
    return false;
  }
  return true;
}

}  // namespace skdv::cli
