#include "threefold/app/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "threefold/errors.hpp"

namespace threefold {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Cache Cache::disabled() { return Cache(); }

Cache Cache::open(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw CacheError("cache directory " + dir + " cannot be created");
  const fs::path probe = fs::path(dir) / ".write-probe";
  {
    std::ofstream os(probe);
    if (!os || !(os << "ok")) throw CacheError("cache directory " + dir + " is not writable");
  }
  fs::remove(probe, ec);
  Cache c;
  c.enabled_ = true;
  c.dir_ = dir;
  return c;
}

std::string Cache::default_dir() {
  if (const char* d = std::getenv("THREEFOLD_CACHE_DIR"); d && *d) return d;
  if (const char* h = std::getenv("HOME"); h && *h) return (fs::path(h) / ".cache" / "threefold").string();
  return ".threefold-cache";
}

Cache::Cache(Cache&& o) noexcept
    : enabled_(o.enabled_), dir_(std::move(o.dir_)), stats_(o.stats_), warnings_(std::move(o.warnings_)) {}

std::string Cache::path_for(const json& key) const {
  return (fs::path(dir_) / (hex64(fnv1a64(key.dump())) + ".json")).string();
}

std::optional<json> Cache::get(const json& key) {
  if (!enabled_) return std::nullopt;
  const std::string path = path_for(key);
  std::ifstream is(path);
  std::lock_guard<std::mutex> lock(mu_);
  if (!is) {
    ++stats_.misses;
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << is.rdbuf();
  std::string problem;
  json rec;
  try {
    rec = json::parse(buf.str());
    if (!rec.is_object() || rec.value("format", "") != kFormat) problem = "unknown record format";
    else if (rec.at("key") != key) problem = "key mismatch";
    else if (rec.at("checksum") != hex64(fnv1a64(rec.at("payload").dump()))) problem = "checksum mismatch";
  } catch (const std::exception&) {
    problem = "unreadable record";
  }
  if (!problem.empty()) {
    ++stats_.corrupt;
    ++stats_.misses;
    warnings_.push_back({"cache-corrupt", "cache entry " + fs::path(path).filename().string() + " discarded (" +
                                              problem + "); value recomputed"});
    std::error_code ec;
    fs::remove(path, ec);
    return std::nullopt;
  }
  ++stats_.hits;
  return rec.at("payload");
}

void Cache::put(const json& key, const json& payload) {
  if (!enabled_) return;
  const json rec = {{"format", kFormat}, {"key", key}, {"checksum", hex64(fnv1a64(payload.dump()))}, {"payload", payload}};
  const std::string path = path_for(key);
  // Write to a temporary name and rename so concurrent readers never see a partial record.
  const std::string tmp = path + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream os(tmp);
    if (!os || !(os << rec.dump()) || !os.flush()) throw CacheError("cannot write cache record " + path);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot install cache record " + path + ": " + ec.message());
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.writes;
}

void Cache::report_malformed(const json& key) {
  const std::string path = path_for(key);
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.corrupt;
  --stats_.hits;
  ++stats_.misses;
  warnings_.push_back({"cache-corrupt", "cache entry " + fs::path(path).filename().string() +
                                            " discarded (malformed payload); value recomputed"});
}

Cache::Stats Cache::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

std::vector<Warning> Cache::take_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Warning> w;
  w.swap(warnings_);
  return w;
}

}  // namespace threefold
