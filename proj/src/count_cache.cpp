#include "pav/count_cache.hpp"

#include <fstream>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace pav {

CountCache::CountCache(std::filesystem::path file) : file_(std::move(file)) {
    if (!std::filesystem::exists(file_)) return;
    std::ifstream in(file_);
    if (!in) throw std::runtime_error("cannot open cache file: " + file_.string());
    nlohmann::json doc;
    in >> doc;
    if (!doc.is_object()) throw std::runtime_error("cache file is not a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        entries_[it.key()] = it.value().get<std::string>();
}

std::optional<Count> CountCache::lookup(const std::string& key) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return Count(it->second);
}

void CountCache::store(const std::string& key, const Count& value) {
    std::unique_lock lock(mutex_);
    entries_[key] = value.get_str();
    dirty_ = true;
}

void CountCache::save() const {
    if (file_.empty()) return;
    std::shared_lock lock(mutex_);
    if (!dirty_) return;
    lock.unlock();
    save_as(file_);
    dirty_ = false;
}

void CountCache::save_as(const std::filesystem::path& file) const {
    nlohmann::json doc = nlohmann::json::object();
    {
        std::shared_lock lock(mutex_);
        for (const auto& [k, v] : entries_) doc[k] = v;
    }
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write cache file: " + file.string());
    out << doc.dump(1) << '\n';
}

size_t CountCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

}  // namespace pav
