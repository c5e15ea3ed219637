#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include <gmpxx.h>

namespace pav {

using Count = mpz_class;

/// On-disk memo for expensive exact counts. Keys are canonical query strings,
/// values decimal count strings; the file is a single JSON object. Lookups
/// take a shared lock, stores an exclusive one (single writer, many readers).
class CountCache {
public:
    CountCache() = default;
    /// Binds the cache to `file` and loads it if it exists.
    explicit CountCache(std::filesystem::path file);

    std::optional<Count> lookup(const std::string& key) const;
    void store(const std::string& key, const Count& value);

    /// Writes back to the bound file (no-op when unbound or clean).
    void save() const;
    void save_as(const std::filesystem::path& file) const;

    size_t size() const;
    const std::filesystem::path& file() const { return file_; }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::string> entries_;
    std::filesystem::path file_;
    mutable bool dirty_ = false;
};

}  // namespace pav
