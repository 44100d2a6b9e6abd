#include "psl2rp/genseq.hpp"

#include <algorithm>
#include <stdexcept>

#include "psl2rp/tuples.hpp"

namespace psl2rp {

GenSeq::GenSeq(std::vector<uint32_t> e) : elems(std::move(e)) {
    for (uint32_t x : elems)
        if (x == GroupTable::identity())
            throw std::invalid_argument("generating sequences never contain the identity");
    if (elems.empty()) throw std::invalid_argument("empty generating sequence");
}

bool is_generating(const GroupTable& g, const GenSeq& s) { return g.generates(s.elems); }

bool is_irredundant(const GroupTable& g, const GenSeq& s) {
    if (s.length() == 1) return true; // the only proper subsequence is empty
    std::vector<uint32_t> rest;
    rest.reserve(s.length() - 1);
    if (is_generating(g, s)) {
        for (uint32_t i = 0; i < s.length(); ++i) {
            rest.clear();
            for (uint32_t j = 0; j < s.length(); ++j)
                if (j != i) rest.push_back(s.elems[j]);
            if (g.generates(rest)) return false;
        }
        return true;
    }
    ElementSet full = g.closure(s.elems);
    for (uint32_t i = 0; i < s.length(); ++i) {
        rest.clear();
        for (uint32_t j = 0; j < s.length(); ++j)
            if (j != i) rest.push_back(s.elems[j]);
        if (g.closure(rest) == full) return false;
    }
    return true;
}

std::vector<uint32_t> corresponding_maximals(const AnalysisContext& ctx, const GenSeq& s) {
    const GroupTable& g = ctx.group;
    if (!is_generating(g, s) || !is_irredundant(g, s))
        throw std::invalid_argument("corresponding_maximals needs an irredundant generating sequence");

    const uint32_t words = ctx.maximals.words();
    std::vector<uint32_t> result(s.length());
    std::vector<uint64_t> acc(words);
    for (uint32_t i = 0; i < s.length(); ++i) {
        // Maximal subgroups containing <s minus i> = those containing every
        // entry of s minus i; lowest catalog index breaks ties.
        std::fill(acc.begin(), acc.end(), ~0ULL);
        for (uint32_t j = 0; j < s.length(); ++j) {
            if (j == i) continue;
            auto row = ctx.maximals_of(s.elems[j]);
            for (uint32_t w = 0; w < words; ++w) acc[w] &= row[w];
        }
        uint32_t found = ctx.maximals.size();
        for (uint32_t w = 0; w < words && found == ctx.maximals.size(); ++w)
            if (acc[w]) found = w * 64 + std::countr_zero(acc[w]);
        if (found >= ctx.maximals.size())
            throw std::logic_error("no maximal subgroup over a proper subgroup (catalog incomplete)");
        if (ctx.maximals[found].set.test(s.elems[i]))
            throw std::logic_error("correspondence violated: g_i inside its own M_i");
        result[i] = found;
    }
    if (!in_general_position(ctx, result))
        throw std::logic_error("corresponding tuple is not in general position");
    return result;
}

namespace {

// A realizable general-position tuple yields an irredundant generating
// sequence (the correspondence works both ways); re-verify by closure
// before handing it out.
GenSeq verified_witness(const AnalysisContext& ctx, const RealizedTuple& rt) {
    if (!is_generating(ctx.group, rt.sequence) || !is_irredundant(ctx.group, rt.sequence))
        throw std::logic_error("realized sequence failed definitional re-verification");
    return rt.sequence;
}

} // namespace

GammaResult gamma_nonempty(const AnalysisContext& ctx, uint32_t n) {
    GammaResult res;
    res.n = n;
    if (n == 0) throw std::invalid_argument("gamma_nonempty needs n >= 1");
    if (n == 1) {
        // A length-1 irredundant generating sequence needs a cyclic G.
        for (uint32_t rep : ctx.group.cyclic_reps()) {
            res.stats.nodes += 1;
            if (ctx.group.element_order(rep) == ctx.group.order()) {
                res.nonempty = true;
                res.witness = GenSeq({rep});
                return res;
            }
        }
        res.nonempty = false;
        return res;
    }

    GpAllResult scan = scan_gp_tuples_all(ctx, n, /*existence_only=*/true);
    res.stats.nodes = scan.stats.candidates;
    res.stats.prunes = scan.stats.candidates - scan.stats.gp_tuples;
    res.stats.realize_calls = scan.stats.realize_calls;
    res.resolved = scan.resolved;
    if (!scan.resolved) return res;
    if (scan.witness) {
        res.nonempty = true;
        res.witness = verified_witness(ctx, *scan.witness);
    } else {
        res.nonempty = false; // exhaustive: no realizable GP n-tuple exists
    }
    return res;
}

uint32_t compute_r(const AnalysisContext& ctx) {
    for (uint32_t n = 1; n <= 5; ++n) {
        GammaResult res = gamma_nonempty(ctx, n);
        if (!res.resolved) throw std::runtime_error("compute_r: search budget exceeded");
        if (res.nonempty) return n;
    }
    throw std::logic_error("compute_r found no generating sequence up to length 5");
}

MResult compute_m(const AnalysisContext& ctx) {
    MResult result;
    uint32_t last_nonempty = 0;
    for (uint32_t n = 1; n <= 6; ++n) {
        GammaResult res = gamma_nonempty(ctx, n);
        result.trace.push_back(res);
        if (!res.resolved) {
            result.resolved = false;
            result.value = last_nonempty;
            result.verified = false;
            return result;
        }
        if (res.nonempty) {
            last_nonempty = n;
        } else if (n > 1) {
            // First empty length above r proves m = n - 1 (Gamma is
            // nonempty exactly on [r, m]).
            result.value = last_nonempty;
            result.verified = last_nonempty == n - 1;
            return result;
        }
    }
    throw std::logic_error("compute_m: irredundant sequences beyond length 6 are impossible here");
}

uint32_t jambor_m(uint32_t p) {
    Prime check(p);
    return (p == 7 || p == 11 || p == 19 || p == 31) ? 4 : 3;
}

} // namespace psl2rp
