#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "psl2rp/analysis.hpp"
#include "psl2rp/report.hpp"

#include <nlohmann/json.hpp>

using namespace psl2rp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("psl2rp_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("cache round trip preserves the table") {
    TempDir dir;
    TableCache cache(dir.path);
    GroupTable fresh = GroupTable::build(11);
    cache.store(fresh);
    CHECK(fs::exists(cache.path_for(11)));

    auto loaded = cache.load(11, {});
    REQUIRE(loaded.has_value());
    CHECK(loaded->order() == fresh.order());
    for (uint32_t i = 0; i < fresh.order(); ++i) {
        CHECK(loaded->matrix_of(i) == fresh.matrix_of(i));
        CHECK(loaded->inverse(i) == fresh.inverse(i));
        CHECK(loaded->element_order(i) == fresh.element_order(i));
    }
}

TEST_CASE("results are identical with and without the cache") {
    TempDir dir;
    AnalysisOptions with_cache;
    with_cache.cache_dir = dir.path;
    AnalysisOptions no_cache;

    AnalysisContext a = AnalysisContext::create(7, with_cache); // cold: builds and stores
    AnalysisContext b = AnalysisContext::create(7, with_cache); // warm: loads
    AnalysisContext c = AnalysisContext::create(7, no_cache);

    nlohmann::json ja = census_to_json(a), jb = census_to_json(b), jc = census_to_json(c);
    CHECK(ja == jb);
    CHECK(ja == jc);
    for (uint32_t i = 0; i < c.group.order(); ++i)
        CHECK(b.group.matrix_of(i) == c.group.matrix_of(i));
}

TEST_CASE("corrupt cache files are rejected, not trusted") {
    TempDir dir;
    TableCache cache(dir.path);
    cache.store(GroupTable::build(7));
    auto file = cache.path_for(7);

    // Truncation.
    fs::resize_file(file, fs::file_size(file) / 2);
    CHECK(!cache.load(7, {}).has_value());

    // Wrong magic.
    {
        std::ofstream os(file, std::ios::binary | std::ios::trunc);
        os << "JUNKJUNKJUNK";
    }
    CHECK(!cache.load(7, {}).has_value());

    // build_cached falls back to a fresh build.
    GroupTable rebuilt = TableCache::build_cached(7, {}, dir.path);
    CHECK(rebuilt.order() == 168);
}
