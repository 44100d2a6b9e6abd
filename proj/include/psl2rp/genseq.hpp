#pragma once

#include <optional>

#include "psl2rp/analysis.hpp"

namespace psl2rp {

// Ordered sequence of nonidentity elements. The identity is a non-generator
// and never appears in a generating-sequence analysis.
struct GenSeq {
    std::vector<uint32_t> elems;

    GenSeq() = default;
    explicit GenSeq(std::vector<uint32_t> e);
    uint32_t length() const { return static_cast<uint32_t>(elems.size()); }
};

bool is_generating(const GroupTable& g, const GenSeq& s);
// True iff no proper subsequence generates the same subgroup as s (which is
// G itself when s generates).
bool is_irredundant(const GroupTable& g, const GenSeq& s);

// For an irredundant generating s: the canonical corresponding tuple of
// maximal subgroups, M_i = lowest-index catalog member containing
// <s minus i>. The result always satisfies g_i in M_j (j != i), g_i not in
// M_i, and is in general position.
std::vector<uint32_t> corresponding_maximals(const AnalysisContext& ctx, const GenSeq& s);

struct SearchStats {
    uint64_t nodes = 0;  // tuples examined
    uint64_t prunes = 0; // candidates rejected before realization
    uint64_t realize_calls = 0;
};

struct GammaResult {
    uint32_t n = 0;
    bool nonempty = false;
    std::optional<GenSeq> witness; // re-verified generating + irredundant
    SearchStats stats;
    bool resolved = true; // false when the search budget was exceeded
};

// Is Gamma_n(G) nonempty? Existence is settled by finding a realizable
// general-position n-tuple (its corresponding sequence is irredundant and
// generating); emptiness by exhausting all of them.
GammaResult gamma_nonempty(const AnalysisContext& ctx, uint32_t n);

struct MResult {
    uint32_t value = 0;
    bool verified = false; // exhaustive emptiness proof at value+1
    bool resolved = true;
    std::vector<GammaResult> trace; // per-n results, n = 1 .. value+1
};

uint32_t compute_r(const AnalysisContext& ctx);
MResult compute_m(const AnalysisContext& ctx);

// Jambor's theorem: m(PSL(2,p)) = 4 for p in {7,11,19,31}, else 3.
uint32_t jambor_m(uint32_t p);

} // namespace psl2rp
