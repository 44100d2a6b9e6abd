#pragma once

#include <functional>
#include <optional>

#include "psl2rp/analysis.hpp"
#include "psl2rp/genseq.hpp"

namespace psl2rp {

// Ordered tuple of maximal subgroups with its cached radical.
struct MaximalTuple {
    std::vector<uint32_t> members; // catalog indices
    ElementSet radical;
};

MaximalTuple make_tuple(const AnalysisContext& ctx, std::vector<uint32_t> members);
ElementSet tuple_radical(const AnalysisContext& ctx, std::span<const uint32_t> members);
bool in_general_position(const AnalysisContext& ctx, std::span<const uint32_t> members);

// Search for a generating sequence corresponding to the tuple: g_i ranges
// over (intersection of the others) minus member i, one candidate per
// cyclic subgroup. Exhaustive; nullopt means no corresponding sequence
// generates. Generation is tested against the certified catalog; callers
// re-verify emitted sequences by definitional closure.
std::optional<GenSeq> realize_tuple(const AnalysisContext& ctx,
                                    std::span<const uint32_t> members);

struct TupleStats {
    uint64_t candidates = 0;      // tuples examined (deduplicated)
    uint64_t gp_tuples = 0;       // of those, in general position
    uint64_t realizable = 0;
    uint64_t realize_calls = 0;
    uint64_t order_p_in_radical = 0; // invariant counter, must stay 0
    uint64_t a4_in_realized = 0;     // A4-tagged member of a realized tuple

    TupleStats& operator+=(const TupleStats& o) {
        candidates += o.candidates;
        gp_tuples += o.gp_tuples;
        realizable += o.realizable;
        realize_calls += o.realize_calls;
        order_p_in_radical += o.order_p_in_radical;
        a4_in_realized += o.a4_in_realized;
        return *this;
    }
};

struct RealizedTuple {
    std::vector<uint32_t> members;
    std::vector<uint32_t> radical; // element indices, ascending
    GenSeq sequence;
};

struct GpScanResult {
    TupleStats stats;
    std::vector<RealizedTuple> realized; // canonical order
    bool resolved = true;
    uint64_t projected_work = 0;
};

// All unordered k-subsets of maximal subgroups in general position with
// nontrivial radical: enumerated per prime-order cyclic subgroup, each
// tuple owned by the cyclic subgroup of the lowest prime-order element of
// its radical. Parallel over roots, merged deterministically.
GpScanResult scan_gp_radical_tuples(const AnalysisContext& ctx, uint32_t k,
                                    bool collect_realized = true);

struct GpAllResult {
    TupleStats stats;
    std::optional<RealizedTuple> witness; // first realizable in canonical order
    uint64_t gp_total = 0;
    bool resolved = true;
    uint64_t projected_work = 0;
};

// All general-position k-tuples, nontrivial radical or not. existence_only
// stops at the first realizable tuple; otherwise every GP tuple is tested
// (the exhaustive route behind Gamma_n emptiness and compute_m).
GpAllResult scan_gp_tuples_all(const AnalysisContext& ctx, uint32_t k, bool existence_only);

// Stream every general-position n-subset, optionally
// filtered to nontrivial radical, in canonical order. Sequential; meant for
// moderate sizes (tests, small p).
void enumerate_gp_tuples(const AnalysisContext& ctx, uint32_t n, bool require_nontrivial_radical,
                         const std::function<void(const MaximalTuple&)>& visit);

} // namespace psl2rp
