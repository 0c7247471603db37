#include "ecaprog/run_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ecaprog {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::filesystem::path default_cache_dir() {
    if (const char* d = std::getenv("ECAPROG_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "ecaprog";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "ecaprog";
    return std::filesystem::temp_directory_path() / "ecaprog-cache";
}

RunCache::RunCache(std::filesystem::path dir) : dir_(std::move(dir)), file_(dir_ / "runs.jsonl") {}

std::string RunCache::make_key(std::string_view command, std::string_view canonical_params) {
    std::string material;
    material.append(command).push_back('\x1f');
    material.append(canonical_params).push_back('\x1f');
    material.append(ECAPROG_VERSION);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(material)));
    return buf;
}

std::optional<std::string> RunCache::lookup(std::string_view key) const {
    std::ifstream in(file_);
    if (!in) return std::nullopt;
    std::optional<std::string> found;
    std::string line;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        const auto k = j.find("key");
        const auto p = j.find("payload");
        if (k == j.end() || p == j.end() || !k->is_string() || !p->is_string()) continue;
        // Later records win.
        if (k->get<std::string>() == key) found = p->get<std::string>();
    }
    return found;
}

void RunCache::store(std::string_view key, std::string_view command, std::string_view payload) const {
    std::filesystem::create_directories(dir_);
    const auto ts = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::system_clock::now().time_since_epoch())
                        .count();
    nlohmann::ordered_json rec{{"key", key}, {"command", command}, {"timestamp", ts}, {"payload", payload}};
    const std::string line = rec.dump() + "\n";

    const int fd = ::open(file_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw std::runtime_error("cannot open cache file " + file_.string());
    if (::flock(fd, LOCK_EX) != 0) {
        ::close(fd);
        throw std::runtime_error("cannot lock cache file " + file_.string());
    }
    std::size_t off = 0;
    bool ok = true;
    while (off < line.size()) {
        const auto n = ::write(fd, line.data() + off, line.size() - off);
        if (n <= 0) {
            ok = false;
            break;
        }
        off += static_cast<std::size_t>(n);
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    if (!ok) throw std::runtime_error("short write to cache file " + file_.string());
}

void RunCache::purge() const {
    std::error_code ec;
    std::filesystem::remove(file_, ec);
}

}  // namespace ecaprog
