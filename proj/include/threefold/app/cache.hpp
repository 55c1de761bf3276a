#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "threefold/diagnostics.hpp"

namespace threefold {

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Content-addressed on-disk store of JSON payloads. One file per key,
// <dir>/<hex(fnv1a(key))>.json, holding
//   {"format": "threefold-cache/1", "key": ..., "checksum": hex(fnv1a(payload dump)), "payload": ...}.
// A record whose format, key or checksum does not match is discarded with a
// "cache-corrupt" warning and the caller recomputes. Thread-safe.
class Cache {
 public:
  static constexpr const char* kFormat = "threefold-cache/1";

  // Disabled caches never touch the filesystem.
  static Cache disabled();
  // Creates the directory if needed; throws CacheError if it is unusable.
  static Cache open(const std::string& dir);
  // THREEFOLD_CACHE_DIR, else $HOME/.cache/threefold, else ./.threefold-cache.
  static std::string default_dir();

  Cache(Cache&& o) noexcept;

  bool enabled() const { return enabled_; }
  const std::string& dir() const { return dir_; }

  std::optional<nlohmann::json> get(const nlohmann::json& key);
  // Throws CacheError when the record cannot be written.
  void put(const nlohmann::json& key, const nlohmann::json& payload);

  std::string path_for(const nlohmann::json& key) const;
  // Records a payload that passed the checksum but could not be decoded.
  void report_malformed(const nlohmann::json& key);

  struct Stats {
    int hits = 0, misses = 0, writes = 0, corrupt = 0;
  };
  Stats stats() const;
  std::vector<Warning> take_warnings();

 private:
  Cache() = default;
  bool enabled_ = false;
  std::string dir_;
  mutable std::mutex mu_;
  Stats stats_;
  std::vector<Warning> warnings_;
};

}  // namespace threefold
