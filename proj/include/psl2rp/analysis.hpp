#pragma once

#include <filesystem>
#include <optional>

#include "psl2rp/group.hpp"
#include "psl2rp/subgroups.hpp"
#include "psl2rp/table_cache.hpp"

namespace psl2rp {

struct AnalysisOptions {
    unsigned threads = 0;             // 0 = hardware concurrency
    uint64_t budget = 4'000'000'000;  // projected tuple candidates before "unresolved"
    uint64_t seed = 0x5eed;
    std::optional<std::filesystem::path> cache_dir;
    bool allow_p5 = false;
    uint32_t mul_table_threshold = 5000;
    uint32_t full_check_threshold = 5000;
    uint32_t maximality_samples = 64;
    uint32_t verify_ceiling = 41; // feasibility gates for the CLI
    uint32_t oracle_ceiling = 13;
    bool override_ceiling = false;
};

// Everything the subgroup/sequence/RP layers need for one prime: the group,
// the certified maximal-subgroup catalog, and the run options. Immutable
// after creation; safe to share across worker threads.
struct AnalysisContext {
    Prime prime;
    GroupTable group;
    MaximalCatalog maximals;
    AnalysisOptions options;

    static AnalysisContext create(uint32_t p, const AnalysisOptions& opts = {});

    uint32_t p() const { return prime.value(); }

    // Membership row (bitset over catalog indices) of g.
    std::span<const uint64_t> maximals_of(uint32_t g) const { return maximals.containing(g); }

    // Catalog-backed generation test: a set generates G iff no maximal
    // subgroup contains all of it. Exact given the certified catalog; the
    // definitional closure test stays the source of truth for emitted
    // artifacts.
    bool generates_by_catalog(std::span<const uint32_t> elems) const;
};

} // namespace psl2rp
