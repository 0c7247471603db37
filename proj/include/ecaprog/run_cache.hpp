#pragma once
// Append-only cache of command payloads. One JSON record per line:
//   {"key": "<16 hex>", "command": ..., "timestamp": ..., "payload": "..."}
// A writer holds an exclusive lock while appending; readers skip lines that
// do not parse, so a torn tail never poisons the cache.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace ecaprog {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// ECAPROG_CACHE_DIR, else $XDG_CACHE_HOME/ecaprog, else $HOME/.cache/ecaprog.
std::filesystem::path default_cache_dir();

class RunCache {
 public:
    explicit RunCache(std::filesystem::path dir);

    const std::filesystem::path& file() const { return file_; }

    /// Hash of the command name, its canonical parameter string and the
    /// library version.
    static std::string make_key(std::string_view command, std::string_view canonical_params);

    std::optional<std::string> lookup(std::string_view key) const;
    void store(std::string_view key, std::string_view command, std::string_view payload) const;
    void purge() const;

 private:
    std::filesystem::path dir_;
    std::filesystem::path file_;
};

}  // namespace ecaprog
