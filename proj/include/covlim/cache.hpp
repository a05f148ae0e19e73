#pragma once

// On-disk image cache. One file per key, named by the FNV-1a hash of the key;
// the file repeats the key on its first line so hash collisions read as misses.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "covlim/engine.hpp"

namespace covlim {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// COVLIM_CACHE_DIR, else $XDG_CACHE_HOME/covlim, else $HOME/.cache/covlim.
inline std::optional<std::filesystem::path> default_cache_dir() {
  if (const char* d = std::getenv("COVLIM_CACHE_DIR"); d && *d) return std::filesystem::path(d);
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::filesystem::path(d) / "covlim";
  if (const char* d = std::getenv("HOME"); d && *d) return std::filesystem::path(d) / ".cache" / "covlim";
  return std::nullopt;
}

class FileCache : public ImageCache {
public:
  explicit FileCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& directory() const { return dir_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  std::optional<std::string> load(const std::string& key) override {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) {
      ++misses_;
      return std::nullopt;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string body = buf.str();
    const std::string head = escape(key) + "\n";
    if (body.compare(0, head.size(), head) != 0) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return body.substr(head.size());
  }

  // Failures to write are ignored: the cache only saves time.
  void store(const std::string& key, const std::string& value) override {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    static std::atomic<unsigned> counter{0};
    const auto final_path = path_for(key);
    auto tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;
      out << escape(key) << '\n' << value;
      if (!out.flush()) {
        std::filesystem::remove(tmp, ec);
        return;
      }
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

private:
  std::filesystem::path path_for(const std::string& key) const {
    char name[17];
    std::snprintf(name, sizeof name, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
    return dir_ / name;
  }

  // keys contain newlines; keep the header on one line
  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '\\')
        out += "\\\\";
      else if (c == '\n')
        out += "\\n";
      else
        out += c;
    }
    return out;
  }

  std::filesystem::path dir_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace covlim
