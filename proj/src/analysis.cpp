#include "psl2rp/analysis.hpp"

namespace psl2rp {

AnalysisContext AnalysisContext::create(uint32_t p, const AnalysisOptions& opts) {
    Prime prime(p, opts.allow_p5);
    BuildOptions bopts;
    bopts.allow_p5 = opts.allow_p5;
    bopts.mul_table_threshold = opts.mul_table_threshold;
    GroupTable group = TableCache::build_cached(p, bopts, opts.cache_dir);

    EnumerationOptions eopts;
    eopts.full_check_threshold = opts.full_check_threshold;
    eopts.maximality_samples = opts.maximality_samples;
    eopts.seed = opts.seed;
    eopts.threads = opts.threads;
    MaximalCatalog maximals = enumerate_maximal_subgroups(group, eopts);

    return AnalysisContext{prime, std::move(group), std::move(maximals), opts};
}

bool AnalysisContext::generates_by_catalog(std::span<const uint32_t> elems) const {
    uint32_t words = maximals.words();
    if (elems.empty()) return false;
    for (uint32_t w = 0; w < words; ++w) {
        uint64_t acc = maximals_of(elems[0])[w];
        for (size_t i = 1; i < elems.size() && acc; ++i) acc &= maximals_of(elems[i])[w];
        if (acc) return false;
    }
    return true;
}

} // namespace psl2rp
