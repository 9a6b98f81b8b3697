#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace skdv::cli {

// Bumped whenever an artifact's layout changes.
inline constexpr int kSchemaVersion = 1;

std::string sha256_hex(const std::string& data);
// Deterministic dump (sorted keys, no whitespace).
std::string canonical(const nlohmann::json& request);

// On-disk artifact store keyed by sha256(canonical request | schema version).
// Each entry is <key>.json with a <key>.sha256 of the payload beside it.
class ArtifactCache {
 public:
  // Empty dir: $SKDV_CACHE_DIR, else ~/.cache/skdv, else disabled.
  explicit ArtifactCache(std::string dir = {}, int schema = kSchemaVersion);

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::string key(const nlohmann::json& request) const;

  // Payload if present and its hash verifies.
  std::optional<std::string> load(const nlohmann::json& request) const;
  // False (with a warning on stderr) if the directory is unwritable.
  bool store(const nlohmann::json& request, const std::string& payload) const;

  void disable() { enabled_ = false; }

 private:
  std::filesystem::path dir_;
  int schema_;
  bool enabled_ = false;
};

}  // namespace skdv::cli
