#pragma once

// Append-only result cache: one RunRecord per line in <dir>/results.jsonl.

#include "rado/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace rado {

/// $RADO_CACHE_DIR, else $XDG_CACHE_HOME/rado, else $HOME/.cache/rado, else ./.rado-cache.
inline std::filesystem::path default_cache_dir()
{
    if (const char* env = std::getenv("RADO_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "rado";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "rado";
    return ".rado-cache";
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir))
    {
        std::ifstream in(file());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            try {
                auto rec = run_record_from_json(json::parse(line));
                // Later lines win; records from other tool versions are ignored.
                if (rec.tool_version == kToolVersion)
                    records_[rec.key()] = std::move(rec);
            } catch (const json::exception&) {
                ++skipped_;
            }
        }
    }

    [[nodiscard]] std::filesystem::path file() const { return dir_ / "results.jsonl"; }

    [[nodiscard]] std::optional<RunRecord> get(const std::string& key) const
    {
        std::lock_guard lock(mutex_);
        auto it = records_.find(key);
        if (it == records_.end())
            return std::nullopt;
        return it->second;
    }

    void put(const RunRecord& rec)
    {
        std::lock_guard lock(mutex_);
        std::filesystem::create_directories(dir_);
        std::ofstream out(file(), std::ios::app);
        out << to_json(rec).dump() << '\n';
        if (!out)
            throw std::runtime_error("cannot write cache file " + file().string());
        records_[rec.key()] = rec;
    }

    [[nodiscard]] std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return records_.size();
    }

    [[nodiscard]] std::size_t skipped_lines() const noexcept { return skipped_; }

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
    std::map<std::string, RunRecord> records_;
    std::size_t skipped_ = 0;
};

} // namespace rado
