#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <map>
#include <thread>
#include <vector>

#include "pav/count_cache.hpp"
#include "pav/enumeration.hpp"
#include "pav/rng.hpp"

using namespace pav;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("cache write/read round-trips 1000 random keys") {
    const auto file = temp_file("pav_cache_roundtrip.json");
    std::filesystem::remove(file);
    std::map<std::string, Count> reference;
    {
        CountCache cache(file);
        Rng rng(404);
        for (int i = 0; i < 1000; ++i) {
            std::string key = "k";
            for (int j = 0; j < 3; ++j) key += std::to_string(rng.next_u64() % 1000) + ";";
            Count value;
            mpz_ui_pow_ui(value.get_mpz_t(), 3, static_cast<unsigned long>(rng.below(uint64_t{200})));
            value += static_cast<unsigned long>(rng.below(uint64_t{1000}));
            reference[key] = value;
            cache.store(key, value);
        }
        cache.save();
    }
    CountCache reloaded(file);
    CHECK(reloaded.size() == reference.size());
    for (const auto& [key, value] : reference) {
        auto hit = reloaded.lookup(key);
        REQUIRE(hit.has_value());
        CHECK(*hit == value);
    }
    CHECK_FALSE(reloaded.lookup("missing").has_value());
    std::filesystem::remove(file);
}

TEST_CASE("count_cell consults and fills the cache") {
    CountCache cache;
    const CellQuery q{Permutation::parse("1234"), 8};
    const Count first = count_cell(q, &cache);
    CHECK(cache.size() == 1);
    CHECK(cache.lookup(q.cache_key()).value() == first);
    // poison the cache to prove the lookup path is taken
    cache.store(q.cache_key(), Count(12345));
    CHECK(count_cell(q, &cache) == 12345);
}

TEST_CASE("concurrent readers with a single writer") {
    CountCache cache;
    for (int i = 0; i < 64; ++i) cache.store("seed" + std::to_string(i), Count(i));
    std::vector<std::thread> readers;
    std::atomic<int> hits{0};
    for (int t = 0; t < 4; ++t)
        readers.emplace_back([&cache, &hits]() {
            for (int round = 0; round < 2000; ++round)
                for (int i = 0; i < 64; ++i)
                    if (cache.lookup("seed" + std::to_string(i))) ++hits;
        });
    std::thread writer([&cache]() {
        for (int i = 64; i < 512; ++i) cache.store("seed" + std::to_string(i), Count(i));
    });
    for (auto& r : readers) r.join();
    writer.join();
    CHECK(hits == 4 * 2000 * 64);
    CHECK(cache.size() == 512);
}

TEST_CASE("unbound cache save is a no-op; save_as writes anywhere") {
    CountCache cache;
    cache.store("a", Count(7));
    cache.save();  // no file bound, nothing to do
    const auto file = temp_file("pav_cache_saveas.json");
    std::filesystem::remove(file);
    cache.save_as(file);
    CountCache reloaded(file);
    CHECK(reloaded.lookup("a").value() == 7);
    std::filesystem::remove(file);
}
