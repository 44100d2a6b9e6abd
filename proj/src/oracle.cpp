#include "psl2rp/rp.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace psl2rp {

namespace {

// Interned proper subgroups arising as <s minus i>, with their lazily
// computed "blocking sets": which replacement candidates r keep <P, r>
// proper. Everything here is closure arithmetic only.
struct SubgroupStore {
    const GroupTable& g;
    const std::vector<uint32_t>& reps; // nonidentity cyclic reps
    uint64_t closures = 0;

    struct Entry {
        ElementSet set;
        std::vector<uint32_t> gens;
        std::vector<uint64_t> blocking; // bitset over reps, lazy
    };
    std::vector<Entry> entries;
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;

    explicit SubgroupStore(const GroupTable& gr, const std::vector<uint32_t>& r)
        : g(gr), reps(r) {}

    uint32_t intern(ElementSet set, std::vector<uint32_t> gens) {
        uint64_t h = set.hash();
        auto& bucket = by_hash[h];
        for (uint32_t id : bucket)
            if (entries[id].set == set) return id;
        uint32_t id = static_cast<uint32_t>(entries.size());
        bucket.push_back(id);
        entries.push_back({std::move(set), std::move(gens), {}});
        return id;
    }

    // r blocks P when <P union {r}> stays proper.
    const std::vector<uint64_t>& blocking(uint32_t id) {
        Entry& e = entries[id];
        if (!e.blocking.empty()) return e.blocking;
        e.blocking.assign((reps.size() + 63) / 64, 0);
        std::vector<uint32_t> gens = e.gens;
        gens.push_back(0);
        for (size_t i = 0; i < reps.size(); ++i) {
            uint32_t r = reps[i];
            bool proper;
            if (e.set.test(r)) {
                proper = true; // closure equals P itself
            } else {
                gens.back() = r;
                bool exceeded = false;
                g.closure_bounded(gens, g.order() / 2, &exceeded);
                ++closures;
                proper = !exceeded;
            }
            if (proper) e.blocking[i >> 6] |= 1ULL << (i & 63);
        }
        return e.blocking;
    }
};

} // namespace

RPReport oracle_check_rp(const GroupTable& g, uint32_t m, const OracleOptions& opts) {
    RPReport report;
    report.p = g.p();
    report.m = m;
    report.m_verified = false;
    report.from_oracle = true;
    report.prediction = predict_rp(g.p());

    std::vector<uint32_t> reps;
    for (uint32_t r : g.cyclic_reps())
        if (r != GroupTable::identity()) reps.push_back(r);
    std::unordered_map<uint32_t, uint32_t> rep_pos;
    for (size_t i = 0; i < reps.size(); ++i) rep_pos[reps[i]] = static_cast<uint32_t>(i);

    SubgroupStore store(g, reps);
    uint64_t closure_budget = opts.max_closures;
    bool exhausted_budget = false;
    auto count_closure = [&]() {
        if (++store.closures > closure_budget) exhausted_budget = true;
    };

    // Pair closures memoized on unordered pairs of cyclic reps; value is
    // the interned subgroup id, or NOT_PROPER when the pair generates.
    constexpr uint32_t kNotProper = ~0u;
    std::unordered_map<uint64_t, uint32_t> pair_memo;
    auto pair_subgroup = [&](uint32_t a, uint32_t b) -> uint32_t {
        uint64_t key = (uint64_t(std::min(a, b)) << 32) | std::max(a, b);
        auto it = pair_memo.find(key);
        if (it != pair_memo.end()) return it->second;
        std::array<uint32_t, 2> gens{a, b};
        bool exceeded = false;
        ElementSet cl = g.closure_bounded(gens, g.order() / 2, &exceeded);
        count_closure();
        uint32_t id = kNotProper;
        if (!exceeded) id = store.intern(std::move(cl), {a, b});
        pair_memo.emplace(key, id);
        return id;
    };

    // Witnesses per blocked-subgroup tuple, unioned over all of Gamma_m up
    // to simultaneous conjugation, per-position cyclic equivalence, and
    // position permutation (the failure set depends only on the subgroup
    // multiset {<s minus i>}).
    std::vector<uint64_t> witness_bits((reps.size() + 63) / 64, 0);
    std::map<std::vector<uint32_t>, bool> tuple_seen; // sorted subgroup ids -> processed
    uint64_t sequences = 0;

    auto process_leaf = [&](const std::vector<uint32_t>& subgroup_ids) {
        std::vector<uint32_t> key = subgroup_ids;
        std::sort(key.begin(), key.end());
        auto [it, fresh] = tuple_seen.emplace(std::move(key), true);
        if (!fresh) return;
        std::vector<uint64_t> acc = store.blocking(subgroup_ids[0]);
        for (size_t t = 1; t < subgroup_ids.size(); ++t) {
            const auto& b = store.blocking(subgroup_ids[t]);
            for (size_t w = 0; w < acc.size(); ++w) acc[w] &= b[w];
        }
        for (size_t w = 0; w < acc.size(); ++w) witness_bits[w] |= acc[w];
        if (store.closures > closure_budget) exhausted_budget = true;
    };

    // Depth-first enumeration of irredundant generating sequences of length
    // m: first entry over conjugacy class representatives, later entries
    // over cyclic representatives, prefixes strictly growing and proper.
    std::vector<uint32_t> seq(m);
    std::vector<ElementSet> prefix_closure;
    prefix_closure.reserve(m);

    std::function<void(uint32_t)> descend = [&](uint32_t depth) {
        if (exhausted_budget) return;
        if (depth == m) {
            ++sequences;
            // Leave-one-out subgroups; all must be proper and the whole
            // sequence must generate.
            std::vector<uint32_t> ids(m);
            std::vector<uint32_t> rest;
            for (uint32_t i = 0; i < m; ++i) {
                rest.clear();
                for (uint32_t j = 0; j < m; ++j)
                    if (j != i) rest.push_back(seq[j]);
                if (m == 3) {
                    uint32_t id = pair_subgroup(rest[0], rest[1]);
                    if (id == kNotProper) return;
                    ids[i] = id;
                } else {
                    bool exceeded = false;
                    ElementSet cl = g.closure_bounded(rest, g.order() / 2, &exceeded);
                    count_closure();
                    if (exceeded) return;
                    ids[i] = store.intern(std::move(cl), rest);
                }
            }
            bool exceeded = false;
            g.closure_bounded(seq, g.order() / 2, &exceeded);
            count_closure();
            if (!exceeded) return; // not generating
            process_leaf(ids);
            return;
        }
        const ElementSet* prev = depth ? &prefix_closure[depth - 1] : nullptr;
        if (depth == 0) {
            for (uint32_t rep : g.class_representatives()) {
                if (rep == GroupTable::identity() || exhausted_budget) continue;
                seq[0] = rep;
                prefix_closure.clear();
                std::array<uint32_t, 1> one{rep};
                prefix_closure.push_back(g.closure(one));
                count_closure();
                descend(1);
            }
            return;
        }
        for (uint32_t rep : reps) {
            if (exhausted_budget) return;
            if (prev->test(rep)) continue; // prefix must strictly grow
            seq[depth] = rep;
            if (depth + 1 == m) {
                // Last slot: defer all subgroup work to the leaf.
                descend(depth + 1);
                continue;
            }
            std::vector<uint32_t> pref(seq.begin(), seq.begin() + depth + 1);
            bool exceeded = false;
            ElementSet cl = g.closure_bounded(pref, g.order() / 2, &exceeded);
            count_closure();
            if (exceeded) continue; // proper prefixes only (else redundant)
            prefix_closure.resize(depth);
            prefix_closure.push_back(std::move(cl));
            descend(depth + 1);
        }
    };
    descend(0);

    report.stats.candidates = sequences;
    report.stats.realize_calls = store.closures;
    if (exhausted_budget) {
        report.verdict = Verdict::Unresolved;
        report.agreement = false;
        return report;
    }

    // Expand failing cyclic reps to all generators of their subgroups, then
    // close under conjugation (W(G) is a union of conjugacy classes).
    std::vector<bool> class_marked(g.class_count(), false);
    for (size_t i = 0; i < reps.size(); ++i)
        if (witness_bits[i >> 6] & (1ULL << (i & 63))) {
            uint32_t rep = reps[i];
            for (uint32_t e = 1; e < g.order(); ++e)
                if (g.cyclic_rep(e) == rep) class_marked[g.class_of(e)] = true;
        }
    for (uint32_t e = 1; e < g.order(); ++e)
        if (class_marked[g.class_of(e)])
            report.witnesses.push_back({e, g.element_order(e)});

    report.verdict = report.witnesses.empty() ? Verdict::Holds : Verdict::Fails;
    report.agreement = (report.verdict == report.prediction);
    return report;
}

} // namespace psl2rp
