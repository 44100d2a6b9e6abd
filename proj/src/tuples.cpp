#include "psl2rp/tuples.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "psl2rp/parallel.hpp"

namespace psl2rp {

namespace {

constexpr uint32_t kIndexBits = 13; // catalog indices fit in 13 bits up to p = 101
constexpr uint32_t kIndexMask = (1u << kIndexBits) - 1;

std::vector<uint32_t> sparse_and(const ElementSet& a, const ElementSet& b) {
    std::vector<uint32_t> out;
    auto wa = a.words(), wb = b.words();
    for (size_t i = 0; i < wa.size(); ++i) {
        uint64_t w = wa[i] & wb[i];
        while (w) {
            out.push_back(static_cast<uint32_t>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

void sparse_filter(const std::vector<uint32_t>& in, const ElementSet& keep,
                   std::vector<uint32_t>& out) {
    out.clear();
    for (uint32_t e : in)
        if (keep.test(e)) out.push_back(e);
}

bool sparse_subset_of(const std::vector<uint32_t>& sp, const ElementSet& s) {
    for (uint32_t e : sp)
        if (!s.test(e)) return false;
    return true;
}

uint64_t binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > (1ULL << 62)) return 1ULL << 62; // saturate
    }
    return r;
}

// Owner of a nontrivial-radical tuple: the cyclic subgroup generated by the
// lowest prime-order element of its radical. Each tuple is processed
// exactly once, at its owning root.
uint32_t owning_root(const GroupTable& g, const std::vector<uint32_t>& radical) {
    for (uint32_t e : radical)
        if (e != GroupTable::identity() && g.has_prime_order(e)) return g.cyclic_rep(e);
    return g.order(); // unreachable: a nontrivial subgroup has prime-order elements
}

} // namespace

MaximalTuple make_tuple(const AnalysisContext& ctx, std::vector<uint32_t> members) {
    ElementSet rad = tuple_radical(ctx, members);
    return MaximalTuple{std::move(members), std::move(rad)};
}

ElementSet tuple_radical(const AnalysisContext& ctx, std::span<const uint32_t> members) {
    if (members.empty()) throw std::invalid_argument("radical of an empty tuple");
    ElementSet r = ctx.maximals[members[0]].set;
    for (size_t i = 1; i < members.size(); ++i) r.intersect_with(ctx.maximals[members[i]].set);
    return r;
}

bool in_general_position(const AnalysisContext& ctx, std::span<const uint32_t> members) {
    size_t k = members.size();
    if (k < 2) return false;
    uint32_t n = ctx.group.order();
    std::vector<ElementSet> prefix(k + 1, ElementSet(n, true)), suffix(k + 1, ElementSet(n, true));
    for (size_t i = 0; i < k; ++i) {
        prefix[i + 1] = prefix[i];
        prefix[i + 1].intersect_with(ctx.maximals[members[i]].set);
    }
    for (size_t i = k; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        suffix[i].intersect_with(ctx.maximals[members[i]].set);
    }
    for (size_t j = 0; j < k; ++j) {
        ElementSet others = prefix[j];
        others.intersect_with(suffix[j + 1]);
        if (others.subset_of(ctx.maximals[members[j]].set)) return false;
    }
    return true;
}

std::optional<GenSeq> realize_tuple(const AnalysisContext& ctx,
                                    std::span<const uint32_t> members) {
    const size_t k = members.size();
    if (k < 1) throw std::invalid_argument("realize_tuple: empty tuple");
    uint32_t n = ctx.group.order();

    std::vector<ElementSet> prefix(k + 1, ElementSet(n, true)), suffix(k + 1, ElementSet(n, true));
    for (size_t i = 0; i < k; ++i) {
        prefix[i + 1] = prefix[i];
        prefix[i + 1].intersect_with(ctx.maximals[members[i]].set);
    }
    for (size_t i = k; i-- > 0;) {
        suffix[i] = suffix[i + 1];
        suffix[i].intersect_with(ctx.maximals[members[i]].set);
    }

    // Slot i: (intersection of the others) minus member i, one candidate
    // per cyclic subgroup (interchangeable for generation tests).
    std::vector<std::vector<uint32_t>> slots(k);
    for (size_t i = 0; i < k; ++i) {
        ElementSet others = prefix[i];
        others.intersect_with(suffix[i + 1]);
        const ElementSet& avoid = ctx.maximals[members[i]].set;
        std::vector<uint32_t> seen_reps;
        others.for_each([&](uint32_t e) {
            if (avoid.test(e)) return;
            uint32_t rep = ctx.group.cyclic_rep(e);
            if (std::find(seen_reps.begin(), seen_reps.end(), rep) == seen_reps.end()) {
                seen_reps.push_back(rep);
                slots[i].push_back(e);
            }
        });
        if (slots[i].empty()) return std::nullopt; // not in general position
    }

    // Search cheapest slots first; the emitted sequence is in position order.
    std::vector<size_t> order(k);
    for (size_t i = 0; i < k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return slots[a].size() < slots[b].size(); });

    const uint32_t words = ctx.maximals.words();
    std::vector<uint64_t> acc((k + 1) * words, ~0ULL);
    std::vector<uint32_t> chosen(k, 0);

    std::function<bool(size_t)> dfs = [&](size_t depth) -> bool {
        if (depth == k) return false; // some maximal subgroup contains everything chosen
        size_t pos = order[depth];
        const uint64_t* prev = acc.data() + depth * words;
        uint64_t* cur = acc.data() + (depth + 1) * words;
        for (uint32_t e : slots[pos]) {
            auto row = ctx.maximals_of(e);
            uint64_t any = 0;
            for (uint32_t w = 0; w < words; ++w) {
                cur[w] = prev[w] & row[w];
                any |= cur[w];
            }
            chosen[pos] = e;
            if (!any) {
                // No maximal subgroup contains all chosen elements, so any
                // completion of the remaining slots generates.
                for (size_t t = depth + 1; t < k; ++t) chosen[order[t]] = slots[order[t]][0];
                return true;
            }
            if (dfs(depth + 1)) return true;
        }
        return false;
    };

    if (!dfs(0)) return std::nullopt;
    return GenSeq(std::vector<uint32_t>(chosen.begin(), chosen.end()));
}

namespace {

struct RootOutput {
    TupleStats stats;
    std::vector<RealizedTuple> realized;
    std::vector<std::vector<uint32_t>> gp_members; // only when collecting for streaming
};

struct ScanMode {
    bool collect_realized = true;
    bool collect_gp_members = false;
    bool realize = true;
};

// Enumerate the k-subsets of the maximal subgroups containing one
// prime-order cyclic subgroup. Every such subset has nontrivial radical
// (it contains the root); the ownership rule keeps global counts exact.
void scan_root(const AnalysisContext& ctx, uint32_t root_rep, uint32_t k, const ScanMode& mode,
               RootOutput& out) {
    const GroupTable& g = ctx.group;
    std::vector<uint32_t> members = ctx.maximals.containing_indices(root_rep);
    const size_t L = members.size();
    if (L < k || k < 2) return;

    std::vector<const ElementSet*> sets(L);
    for (size_t i = 0; i < L; ++i) sets[i] = &ctx.maximals[members[i]].set;

    auto pair_at = [L](size_t i, size_t j) { return i * L + j; };
    std::vector<std::vector<uint32_t>> pairs(L * L);
    for (size_t i = 0; i < L; ++i)
        for (size_t j = i + 1; j < L; ++j) pairs[pair_at(i, j)] = sparse_and(*sets[i], *sets[j]);

    std::vector<size_t> pick(k);
    std::vector<std::vector<uint32_t>> inter(k);
    std::vector<uint32_t> tmp1, tmp2;

    auto gp_check = [&]() -> bool {
        if (k == 2) return true; // distinct maximal subgroups never contain one another
        for (size_t jdrop = 0; jdrop < k; ++jdrop) {
            std::array<size_t, 5> o{};
            size_t cnt = 0;
            for (size_t t = 0; t < k; ++t)
                if (t != jdrop) o[cnt++] = t;
            const std::vector<uint32_t>& base = pairs[pair_at(pick[o[0]], pick[o[1]])];
            if (cnt == 2) {
                if (sparse_subset_of(base, *sets[pick[jdrop]])) return false;
                continue;
            }
            tmp1 = base;
            for (size_t t = 2; t < cnt; ++t) {
                sparse_filter(tmp1, *sets[pick[o[t]]], tmp2);
                tmp1.swap(tmp2);
            }
            if (sparse_subset_of(tmp1, *sets[pick[jdrop]])) return false;
        }
        return true;
    };

    auto handle_full = [&](const std::vector<uint32_t>& radical) {
        if (owning_root(g, radical) != root_rep) return;
        out.stats.candidates += 1;
        for (uint32_t e : radical)
            if (g.element_order(e) == g.p()) {
                out.stats.order_p_in_radical += 1;
                break;
            }
        if (!gp_check()) return;
        out.stats.gp_tuples += 1;

        std::vector<uint32_t> tuple_members(k);
        for (size_t t = 0; t < k; ++t) tuple_members[t] = members[pick[t]];
        if (mode.collect_gp_members) out.gp_members.push_back(tuple_members);
        if (!mode.realize) return;

        out.stats.realize_calls += 1;
        if (auto seq = realize_tuple(ctx, tuple_members)) {
            out.stats.realizable += 1;
            for (uint32_t m : tuple_members)
                if (ctx.maximals[m].tag == TypeTag::A4) {
                    out.stats.a4_in_realized += 1;
                    break;
                }
            if (mode.collect_realized)
                out.realized.push_back({std::move(tuple_members), radical, std::move(*seq)});
        }
    };

    std::function<void(size_t, size_t)> rec = [&](size_t depth, size_t start) {
        for (size_t i = start; i < L; ++i) {
            pick[depth] = i;
            if (depth == 0) {
                rec(1, i + 1);
            } else {
                if (depth == 1)
                    inter[1] = pairs[pair_at(pick[0], i)];
                else
                    sparse_filter(inter[depth - 1], *sets[i], inter[depth]);
                if (depth + 1 == k)
                    handle_full(inter[depth]);
                else
                    rec(depth + 1, i + 1);
            }
        }
    };
    rec(0, 0);
}

std::vector<uint32_t> prime_order_roots(const AnalysisContext& ctx) {
    std::vector<uint32_t> roots;
    for (uint32_t rep : ctx.group.cyclic_reps())
        if (rep != GroupTable::identity() && ctx.group.has_prime_order(rep)) roots.push_back(rep);
    return roots;
}

uint64_t projected_root_work(const AnalysisContext& ctx, const std::vector<uint32_t>& roots,
                             uint32_t k) {
    uint64_t total = 0;
    for (uint32_t rep : roots) {
        uint32_t count = 0;
        auto row = ctx.maximals_of(rep);
        for (uint32_t w = 0; w < ctx.maximals.words(); ++w) count += std::popcount(row[w]);
        total += binom(count, k);
    }
    return total;
}

} // namespace

GpScanResult scan_gp_radical_tuples(const AnalysisContext& ctx, uint32_t k,
                                    bool collect_realized) {
    GpScanResult result;
    std::vector<uint32_t> roots = prime_order_roots(ctx);
    result.projected_work = projected_root_work(ctx, roots, k);
    if (result.projected_work > ctx.options.budget) {
        result.resolved = false;
        return result;
    }

    ScanMode mode;
    mode.collect_realized = collect_realized;
    std::vector<RootOutput> outputs(roots.size());
    parallel_for(roots.size(), ctx.options.threads,
                 [&](uint64_t i) { scan_root(ctx, roots[i], k, mode, outputs[i]); });

    for (auto& out : outputs) {
        result.stats += out.stats;
        for (auto& r : out.realized) result.realized.push_back(std::move(r));
    }
    std::sort(result.realized.begin(), result.realized.end(),
              [](const RealizedTuple& a, const RealizedTuple& b) { return a.members < b.members; });
    return result;
}

namespace {

// Sorted unique packed keys of the j-subsets with nontrivial j-way
// intersection, j <= 4.
std::vector<uint64_t> nontrivial_subset_keys(const AnalysisContext& ctx, uint32_t j) {
    std::vector<uint64_t> keys;
    for (uint32_t rep : prime_order_roots(ctx)) {
        std::vector<uint32_t> members = ctx.maximals.containing_indices(rep);
        size_t L = members.size();
        if (L < j) continue;
        std::function<void(size_t, size_t, uint64_t)> rec = [&](size_t depth, size_t start,
                                                                uint64_t key) {
            for (size_t i = start; i < L; ++i) {
                uint64_t k2 = (key << kIndexBits) | members[i];
                if (depth + 1 == j)
                    keys.push_back(k2);
                else
                    rec(depth + 1, i + 1, k2);
            }
        };
        rec(0, 0, 0);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

void unpack_key(uint64_t key, uint32_t j, std::vector<uint32_t>& out) {
    out.resize(j);
    for (uint32_t t = j; t-- > 0;) {
        out[t] = static_cast<uint32_t>(key & kIndexMask);
        key >>= kIndexBits;
    }
}

// (j-1)-subset -> sorted completers z with subset + {z} nontrivial.
struct CompletionIndex {
    std::vector<uint64_t> entries; // (subkey << 13) | z, sorted
    std::unordered_map<uint64_t, std::pair<uint32_t, uint32_t>> runs;

    void build(const std::vector<uint64_t>& keys, uint32_t j) {
        entries.clear();
        entries.reserve(keys.size() * j);
        std::vector<uint32_t> m;
        for (uint64_t key : keys) {
            unpack_key(key, j, m);
            for (uint32_t drop = 0; drop < j; ++drop) {
                uint64_t sub = 0;
                for (uint32_t t = 0; t < j; ++t)
                    if (t != drop) sub = (sub << kIndexBits) | m[t];
                entries.push_back((sub << kIndexBits) | m[drop]);
            }
        }
        std::sort(entries.begin(), entries.end());
        runs.reserve(entries.size());
        size_t i = 0;
        while (i < entries.size()) {
            uint64_t sub = entries[i] >> kIndexBits;
            size_t b = i;
            while (i < entries.size() && (entries[i] >> kIndexBits) == sub) ++i;
            runs.emplace(sub,
                         std::make_pair(static_cast<uint32_t>(b), static_cast<uint32_t>(i - b)));
        }
    }

    std::span<const uint64_t> of(uint64_t subkey) const {
        auto it = runs.find(subkey);
        if (it == runs.end()) return {};
        return {entries.data() + it->second.first, it->second.second};
    }
};

struct ChunkOutput {
    TupleStats stats;
    uint64_t gp_total = 0;
    std::optional<RealizedTuple> witness;
    std::vector<std::vector<uint32_t>> gp_members;
};

} // namespace

GpAllResult scan_gp_tuples_all(const AnalysisContext& ctx, uint32_t k, bool existence_only) {
    GpAllResult result;
    const uint32_t K = ctx.maximals.size();
    if (k < 2 || k > 5) throw std::invalid_argument("scan_gp_tuples_all supports 2 <= k <= 5");

    if (k == 2) {
        // Distinct maximal subgroups are always in general position.
        result.projected_work = binom(K, 2);
        if (result.projected_work > ctx.options.budget) {
            result.resolved = false;
            return result;
        }
        for (uint32_t i = 0; i < K; ++i)
            for (uint32_t j2 = i + 1; j2 < K; ++j2) {
                result.stats.candidates += 1;
                result.stats.gp_tuples += 1;
                result.gp_total += 1;
                result.stats.realize_calls += 1;
                std::vector<uint32_t> members{i, j2};
                if (auto seq = realize_tuple(ctx, members)) {
                    result.stats.realizable += 1;
                    if (!result.witness) {
                        auto rad = tuple_radical(ctx, members);
                        result.witness = RealizedTuple{members, rad.indices(), std::move(*seq)};
                    }
                    if (existence_only) return result;
                }
            }
        return result;
    }

    const uint32_t j = k - 1;
    std::vector<uint32_t> roots = prime_order_roots(ctx);
    result.projected_work = projected_root_work(ctx, roots, j) * j;
    if (result.projected_work > ctx.options.budget) {
        result.resolved = false;
        return result;
    }

    std::vector<uint64_t> base = nontrivial_subset_keys(ctx, j);
    CompletionIndex comp;
    comp.build(base, j);

    // Every GP k-tuple has all of its (k-1)-subsets nontrivially
    // intersecting, so it arises exactly once as (its lowest k-1 members R,
    // extension d > max R) with the other (k-1)-subsets found in the index.
    auto process_range = [&](size_t lo, size_t hi, ChunkOutput& out, bool stop_at_first,
                             bool collect_gp) {
        std::vector<uint32_t> m(j), cand;
        std::array<std::span<const uint64_t>, 4> lists;
        for (size_t idx = lo; idx < hi; ++idx) {
            unpack_key(base[idx], j, m);
            bool empty = false;
            for (uint32_t drop = 0; drop < j; ++drop) {
                uint64_t sub = 0;
                for (uint32_t t = 0; t < j; ++t)
                    if (t != drop) sub = (sub << kIndexBits) | m[t];
                lists[drop] = comp.of(sub);
                if (lists[drop].empty()) {
                    empty = true;
                    break;
                }
            }
            if (empty) continue;

            cand.clear();
            auto value = [&](uint32_t l, size_t i) {
                return static_cast<uint32_t>(lists[l][i] & kIndexMask);
            };
            std::array<size_t, 4> pos{};
            uint32_t minval = m[j - 1];
            for (uint32_t l = 0; l < j; ++l) {
                size_t i = 0;
                while (i < lists[l].size() && value(l, i) <= minval) ++i;
                pos[l] = i;
            }
            while (true) {
                bool done = false;
                uint32_t target = 0;
                for (uint32_t l = 0; l < j; ++l) {
                    if (pos[l] >= lists[l].size()) {
                        done = true;
                        break;
                    }
                    target = std::max(target, value(l, pos[l]));
                }
                if (done) break;
                bool equal = true;
                for (uint32_t l = 0; l < j && !done; ++l) {
                    while (pos[l] < lists[l].size() && value(l, pos[l]) < target) ++pos[l];
                    if (pos[l] >= lists[l].size())
                        done = true;
                    else if (value(l, pos[l]) != target)
                        equal = false;
                }
                if (done) break;
                if (equal) {
                    cand.push_back(target);
                    for (uint32_t l = 0; l < j; ++l) ++pos[l];
                }
            }
            if (cand.empty()) continue;

            std::vector<uint32_t> members(m.begin(), m.end());
            members.push_back(0);
            for (uint32_t d : cand) {
                members[j] = d;
                out.stats.candidates += 1;
                if (!in_general_position(ctx, members)) continue;
                out.stats.gp_tuples += 1;
                out.gp_total += 1;
                if (collect_gp) out.gp_members.push_back(members);
                out.stats.realize_calls += 1;
                if (auto seq = realize_tuple(ctx, members)) {
                    out.stats.realizable += 1;
                    if (!out.witness) {
                        auto rad = tuple_radical(ctx, members);
                        out.witness = RealizedTuple{members, rad.indices(), std::move(*seq)};
                    }
                    if (stop_at_first) return;
                }
            }
        }
    };

    if (existence_only) {
        ChunkOutput out;
        process_range(0, base.size(), out, true, false);
        result.stats += out.stats;
        result.gp_total = out.gp_total;
        result.witness = std::move(out.witness);
        return result;
    }

    unsigned threads = resolve_threads(ctx.options.threads);
    size_t chunk_count = std::max<size_t>(1, std::min<size_t>(base.size(), size_t(threads) * 32));
    std::vector<ChunkOutput> outs(chunk_count);
    size_t per = (base.size() + chunk_count - 1) / chunk_count;
    parallel_for(chunk_count, threads, [&](uint64_t c) {
        size_t lo = c * per, hi = std::min(base.size(), lo + per);
        if (lo < hi) process_range(lo, hi, outs[c], false, false);
    });
    for (auto& out : outs) {
        result.stats += out.stats;
        result.gp_total += out.gp_total;
        if (out.witness && (!result.witness || out.witness->members < result.witness->members))
            result.witness = std::move(out.witness);
    }
    return result;
}

void enumerate_gp_tuples(const AnalysisContext& ctx, uint32_t n, bool require_nontrivial_radical,
                         const std::function<void(const MaximalTuple&)>& visit) {
    if (n < 2) throw std::invalid_argument("enumerate_gp_tuples needs n >= 2");

    std::vector<std::vector<uint32_t>> collected;
    if (require_nontrivial_radical) {
        std::vector<uint32_t> roots = prime_order_roots(ctx);
        ScanMode mode;
        mode.collect_realized = false;
        mode.collect_gp_members = true;
        mode.realize = false;
        std::vector<RootOutput> outputs(roots.size());
        parallel_for(roots.size(), ctx.options.threads,
                     [&](uint64_t i) { scan_root(ctx, roots[i], n, mode, outputs[i]); });
        for (auto& out : outputs)
            for (auto& mvec : out.gp_members) collected.push_back(std::move(mvec));
    } else {
        // Plain subset walk with a pairwise-intersection prune; meant for
        // small catalogs (tests and report commands at small p).
        const uint32_t K = ctx.maximals.size();
        std::vector<ElementSet> adj;
        if (n >= 3) {
            adj.assign(K, ElementSet(K));
            for (uint32_t i = 0; i < K; ++i)
                for (uint32_t j = i + 1; j < K; ++j)
                    if (ctx.maximals[i].set.shares_nonidentity(ctx.maximals[j].set)) {
                        adj[i].insert(j);
                        adj[j].insert(i);
                    }
        }
        std::vector<uint32_t> pick;
        std::function<void(uint32_t)> rec = [&](uint32_t start) {
            if (pick.size() == n) {
                if (in_general_position(ctx, pick)) collected.push_back(pick);
                return;
            }
            for (uint32_t i = start; i < K; ++i) {
                if (n >= 3 && !pick.empty()) {
                    bool ok = true;
                    for (uint32_t q : pick)
                        if (!adj[q].test(i)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                }
                pick.push_back(i);
                rec(i + 1);
                pick.pop_back();
            }
        };
        rec(0);
    }

    std::sort(collected.begin(), collected.end());
    for (const auto& members : collected) visit(make_tuple(ctx, members));
}

} // namespace psl2rp
