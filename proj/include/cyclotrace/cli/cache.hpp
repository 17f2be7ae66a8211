#pragma once

// One JSON file per entry, named by the parameter hash, guarded by an
// advisory flock on <dir>/.lock.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "../numerics/errors.hpp"

namespace cyclotrace::cli {

inline constexpr int kCacheSchema = 1;

class DirLock {
public:
    explicit DirLock(const std::filesystem::path& dir) {
        fd_ = ::open((dir / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw domain_error("cache: cannot open lock file in " + dir.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw internal_error("cache: flock failed");
        }
    }
    ~DirLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    int fd_ = -1;
};

class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    bool enabled() const { return !dir_.empty(); }

    std::optional<nlohmann::json> load(const std::string& kind, const std::string& hash) const {
        if (!enabled()) return std::nullopt;
        DirLock lock(dir_);
        std::ifstream in(path(hash));
        if (!in) return std::nullopt;
        nlohmann::json e = nlohmann::json::parse(in, nullptr, false);
        if (e.is_discarded() || e.value("schema_version", 0) != kCacheSchema || e.value("kind", "") != kind ||
            e.value("hash", "") != hash)
            return std::nullopt;
        return e;
    }

    // entry = {"params", "value", "error"}; the envelope fields are added here.
    nlohmann::json store(const std::string& kind, const std::string& hash, nlohmann::json entry) const {
        entry["schema_version"] = kCacheSchema;
        entry["kind"] = kind;
        entry["hash"] = hash;
        entry["timestamp"] = static_cast<long long>(std::time(nullptr));
        if (!enabled()) return entry;
        DirLock lock(dir_);
        std::filesystem::path tmp = path(hash);
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << entry.dump(2) << "\n";
            if (!out) throw internal_error("cache: write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, path(hash));
        return entry;
    }

    std::filesystem::path path(const std::string& hash) const { return std::filesystem::path(dir_) / (hash + ".json"); }

private:
    std::string dir_;
};

}  // namespace cyclotrace::cli
