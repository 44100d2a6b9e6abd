#pragma once

#include <filesystem>
#include <optional>

#include "psl2rp/group.hpp"

namespace psl2rp {

// Optional on-disk cache of built group tables, keyed by p. Purely an
// optimization: results are identical with the cache disabled, and a load
// that fails validation falls back to a fresh build.
class TableCache {
public:
    static constexpr uint32_t kVersion = 1;

    explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path_for(uint32_t p) const;

    // Load if present and valid; nullopt otherwise.
    std::optional<GroupTable> load(uint32_t p, const BuildOptions& opts) const;
    void store(const GroupTable& g) const;

    // Build through the cache.
    static GroupTable build_cached(uint32_t p, const BuildOptions& opts,
                                   const std::optional<std::filesystem::path>& dir);

private:
    std::filesystem::path dir_;
};

} // namespace psl2rp
