#include "psl2rp/subgroups.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "psl2rp/parallel.hpp"

namespace psl2rp {

namespace {

uint64_t hash_members(std::span<const uint32_t> v) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint32_t x : v) {
        h ^= x;
        h *= 0x100000001b3ULL;
    }
    return h ^ v.size();
}

// ---- abstract permutation models (degree <= 5) ----

using Perm = std::array<uint8_t, 5>;

Perm perm_compose(const Perm& f, const Perm& g) { // apply g first, then f
    Perm r{};
    for (int i = 0; i < 5; ++i) r[i] = f[g[i]];
    return r;
}

uint32_t perm_order(const Perm& x) {
    Perm id{0, 1, 2, 3, 4};
    Perm cur = x;
    uint32_t n = 1;
    while (cur != id) {
        cur = perm_compose(cur, x);
        ++n;
    }
    return n;
}

bool perm_even(const Perm& x, int degree) {
    int transpositions = 0;
    std::array<bool, 5> seen{};
    for (int i = 0; i < degree; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = x[j];
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

Fingerprint perm_group_fingerprint(int degree, bool even_only) {
    std::array<uint8_t, 5> base{0, 1, 2, 3, 4};
    std::vector<Perm> elems;
    std::vector<uint8_t> idx(base.begin(), base.begin() + degree);
    do {
        Perm x{0, 1, 2, 3, 4};
        for (int i = 0; i < degree; ++i) x[i] = idx[i];
        if (!even_only || perm_even(x, degree)) elems.push_back(x);
    } while (std::next_permutation(idx.begin(), idx.end()));

    Fingerprint fp;
    fp.order = static_cast<uint32_t>(elems.size());
    for (const Perm& x : elems) ++fp.order_multiset[perm_order(x)];
    uint32_t center = 0;
    for (const Perm& x : elems) {
        bool central = true;
        for (const Perm& y : elems)
            if (perm_compose(x, y) != perm_compose(y, x)) {
                central = false;
                break;
            }
        if (central) ++center;
    }
    fp.center_size = center;
    fp.abelian = (center == fp.order);
    return fp;
}

Fingerprint dihedral_fingerprint(uint32_t n) { // |D_n| = n, n even
    Fingerprint fp;
    fp.order = n;
    uint32_t m = n / 2;
    for (uint32_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        uint32_t phi = 0;
        for (uint32_t k = 1; k <= d; ++k)
            if (std::gcd(k, d) == 1) ++phi;
        fp.order_multiset[d] += phi;
    }
    fp.order_multiset[2] += m; // reflections
    fp.center_size = (m % 2 == 0) ? 2 : 1;
    fp.abelian = (n <= 4);
    if (fp.abelian) fp.center_size = n;
    return fp;
}

Fingerprint borel_fingerprint(uint32_t p) { // Z_p : Z_{(p-1)/2}, Frobenius
    Fingerprint fp;
    uint32_t q = (p - 1) / 2;
    fp.order = p * q;
    fp.order_multiset[1] = 1;
    fp.order_multiset[p] += p - 1;
    for (uint32_t d = 2; d <= q; ++d) {
        if (q % d) continue;
        uint32_t phi = 0;
        for (uint32_t k = 1; k <= d; ++k)
            if (std::gcd(k, d) == 1) ++phi;
        fp.order_multiset[d] += p * phi;
    }
    fp.abelian = (q == 1);
    fp.center_size = 1;
    return fp;
}

const Fingerprint& a4_fingerprint() {
    static const Fingerprint fp = perm_group_fingerprint(4, true);
    return fp;
}
const Fingerprint& s4_fingerprint() {
    static const Fingerprint fp = perm_group_fingerprint(4, false);
    return fp;
}
const Fingerprint& a5_fingerprint() {
    static const Fingerprint fp = perm_group_fingerprint(5, true);
    return fp;
}

} // namespace

std::string type_label(TypeTag tag, uint32_t p) {
    switch (tag) {
    case TypeTag::Borel: return "Borel";
    case TypeTag::DihedralPminus1: return "D" + std::to_string(p - 1);
    case TypeTag::DihedralPplus1: return "D" + std::to_string(p + 1);
    case TypeTag::A4: return "A4";
    case TypeTag::S4: return "S4";
    case TypeTag::A5: return "A5";
    case TypeTag::Other: return "Other";
    }
    return "Other";
}

Fingerprint reference_fingerprint(TypeTag tag, uint32_t p) {
    switch (tag) {
    case TypeTag::Borel: return borel_fingerprint(p);
    case TypeTag::DihedralPminus1: return dihedral_fingerprint(p - 1);
    case TypeTag::DihedralPplus1: return dihedral_fingerprint(p + 1);
    case TypeTag::A4: return a4_fingerprint();
    case TypeTag::S4: return s4_fingerprint();
    case TypeTag::A5: return a5_fingerprint();
    case TypeTag::Other: break;
    }
    throw std::invalid_argument("no reference fingerprint for Other");
}

Fingerprint fingerprint_of(const GroupTable& g, std::span<const uint32_t> members) {
    Fingerprint fp;
    fp.order = static_cast<uint32_t>(members.size());
    for (uint32_t x : members) ++fp.order_multiset[g.element_order(x)];
    uint32_t center = 0;
    for (uint32_t x : members) {
        bool central = true;
        for (uint32_t y : members)
            if (g.multiply(x, y) != g.multiply(y, x)) {
                central = false;
                break;
            }
        if (central) ++center;
    }
    fp.center_size = center;
    fp.abelian = (center == fp.order);
    return fp;
}

Fingerprint fingerprint_of(const GroupTable& g, const ElementSet& h) {
    return fingerprint_of(g, h.indices());
}

TypeTag classify(const GroupTable& g, const ElementSet& h) {
    Fingerprint fp = fingerprint_of(g, h);
    for (TypeTag tag : {TypeTag::Borel, TypeTag::DihedralPminus1, TypeTag::DihedralPplus1,
                        TypeTag::A4, TypeTag::S4, TypeTag::A5}) {
        Fingerprint ref = reference_fingerprint(tag, g.p());
        if (ref.order == fp.order && ref == fp) return tag;
    }
    return TypeTag::Other;
}

std::string IsoClass::label() const {
    switch (kind) {
    case Kind::Trivial: return "1";
    case Kind::Cyclic: return "Z" + std::to_string(order);
    case Kind::Klein: return "Z2xZ2";
    case Kind::Dihedral: return order == 6 ? "S3" : "D" + std::to_string(order);
    case Kind::A4: return "A4";
    case Kind::S4: return "S4";
    case Kind::A5: return "A5";
    case Kind::Borel: return "Borel";
    case Kind::Other: return "Other(" + std::to_string(order) + ")";
    }
    return "Other";
}

IsoClass small_iso(const GroupTable& g, std::span<const uint32_t> members) {
    uint32_t n = static_cast<uint32_t>(members.size());
    if (n == 1) return {IsoClass::Kind::Trivial, 1};
    uint32_t max_order = 0;
    for (uint32_t x : members) max_order = std::max(max_order, g.element_order(x));
    if (max_order == n) return {IsoClass::Kind::Cyclic, n};
    if (n == 4) return {IsoClass::Kind::Klein, 4};

    Fingerprint fp = fingerprint_of(g, members);
    if (n % 2 == 0 && fp == dihedral_fingerprint(n)) return {IsoClass::Kind::Dihedral, n};
    if (n == 12 && fp == a4_fingerprint()) return {IsoClass::Kind::A4, 12};
    if (n == 24 && fp == s4_fingerprint()) return {IsoClass::Kind::S4, 24};
    if (n == 60 && fp == a5_fingerprint()) return {IsoClass::Kind::A5, 60};
    if (fp == borel_fingerprint(g.p())) return {IsoClass::Kind::Borel, n};
    return {IsoClass::Kind::Other, n};
}

IsoClass small_iso(const GroupTable& g, const ElementSet& h) {
    return small_iso(g, h.indices());
}

ElementSet centralizer(const GroupTable& g, uint32_t x) {
    ElementSet s(g.order());
    for (uint32_t y = 0; y < g.order(); ++y)
        if (g.multiply(x, y) == g.multiply(y, x)) s.insert(y);
    return s;
}

ElementSet normalizer(const GroupTable& g, const ElementSet& h, std::span<const uint32_t> gens) {
    std::vector<uint32_t> gen_list(gens.begin(), gens.end());
    if (gen_list.empty()) gen_list = small_generators(g, h);
    ElementSet s(g.order());
    for (uint32_t y = 0; y < g.order(); ++y) {
        bool ok = true;
        for (uint32_t x : gen_list)
            if (!h.test(g.conjugate(x, y))) {
                ok = false;
                break;
            }
        if (ok) s.insert(y);
    }
    return s;
}

std::vector<uint32_t> small_generators(const GroupTable& g, const ElementSet& h,
                                       uint32_t limit) {
    std::vector<uint32_t> members = h.indices();
    if (members.empty() || members[0] != GroupTable::identity())
        throw std::invalid_argument("small_generators: not a subgroup (identity missing)");
    if (members.size() == 1) return {GroupTable::identity()};

    // A maximal-order element plus one partner generates everything in
    // sight (dihedral, Borel, A4/S4/A5, Klein); greedy extension is a
    // fallback only.
    uint32_t first = members[1];
    for (uint32_t x : members)
        if (g.element_order(x) > g.element_order(first)) first = x;
    std::vector<uint32_t> gens{first};
    ElementSet covered = g.closure(gens);
    if (covered == h) return gens;
    for (uint32_t y : members) {
        if (covered.test(y)) continue;
        std::array<uint32_t, 2> pair{first, y};
        if (g.closure(pair) == h) return {first, y};
    }
    for (uint32_t x : members) {
        if (covered.test(x)) continue;
        gens.push_back(x);
        covered = g.closure(gens);
        if (covered == h) return gens;
        if (gens.size() >= limit) break;
    }
    throw std::logic_error("small_generators: subgroup needs more than " +
                           std::to_string(limit) + " generators");
}

ElementSet frattini(const GroupTable& g, const MaximalCatalog& maximals) {
    if (maximals.size() == 0) throw std::invalid_argument("frattini: empty catalog");
    ElementSet r = maximals[0].set;
    for (uint32_t i = 1; i < maximals.size(); ++i) r.intersect_with(maximals[i].set);
    return r;
}

std::map<TypeTag, uint32_t> MaximalCatalog::census() const {
    std::map<TypeTag, uint32_t> c;
    for (const auto& m : items_) ++c[m.tag];
    return c;
}

std::vector<uint32_t> MaximalCatalog::containing_indices(uint32_t g) const {
    std::vector<uint32_t> out;
    auto row = containing(g);
    for (uint32_t w = 0; w < words_; ++w) {
        uint64_t bits = row[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

namespace {

// Deduplicating pool of subgroups stored as sorted member vectors.
struct SubgroupPool {
    std::vector<std::vector<uint32_t>> all;
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;

    // returns (id, inserted)
    std::pair<uint32_t, bool> insert(std::vector<uint32_t> members) {
        uint64_t h = hash_members(members);
        auto& bucket = by_hash[h];
        for (uint32_t id : bucket)
            if (all[id] == members) return {id, false};
        uint32_t id = static_cast<uint32_t>(all.size());
        bucket.push_back(id);
        all.push_back(std::move(members));
        return {id, true};
    }
};

std::vector<uint32_t> conjugate_members(const GroupTable& g, std::span<const uint32_t> members,
                                        uint32_t by) {
    std::vector<uint32_t> out;
    out.reserve(members.size());
    for (uint32_t x : members) out.push_back(g.conjugate(x, by));
    std::sort(out.begin(), out.end());
    return out;
}

struct ConjugacyClassOrbit {
    std::vector<uint32_t> subgroup_ids;      // ids in a SubgroupPool
    std::vector<std::vector<uint32_t>> gens; // generators carried along the orbit
};

// Saturate a subgroup under conjugation, carrying small generating sets so
// every conjugate keeps closure(gens) == set.
ConjugacyClassOrbit saturate(const GroupTable& g, SubgroupPool& pool, uint32_t rep_id,
                             std::vector<uint32_t> rep_gens) {
    ConjugacyClassOrbit orbit;
    auto [tg, ug] = g.standard_generators();
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> frontier;
    frontier.emplace_back(rep_id, rep_gens);
    orbit.subgroup_ids.push_back(rep_id);
    orbit.gens.push_back(std::move(rep_gens));
    std::unordered_map<uint64_t, std::vector<uint32_t>> seen;
    seen[hash_members(pool.all[rep_id])].push_back(rep_id);
    while (!frontier.empty()) {
        auto [id, gens] = std::move(frontier.back());
        frontier.pop_back();
        for (uint32_t s : {tg, ug}) {
            auto conj = conjugate_members(g, pool.all[id], s);
            uint64_t h = hash_members(conj);
            auto& bucket = seen[h];
            bool found = false;
            for (uint32_t known : bucket)
                if (pool.all[known] == conj) {
                    found = true;
                    break;
                }
            if (found) continue;
            std::vector<uint32_t> cgens;
            cgens.reserve(gens.size());
            for (uint32_t x : gens) cgens.push_back(g.conjugate(x, s));
            auto [cid, fresh] = pool.insert(std::move(conj));
            bucket.push_back(cid);
            orbit.subgroup_ids.push_back(cid);
            orbit.gens.push_back(cgens);
            frontier.emplace_back(cid, std::move(cgens));
        }
    }
    return orbit;
}

ElementSet to_set(uint32_t universe, std::span<const uint32_t> members) {
    ElementSet s(universe);
    for (uint32_t x : members) s.insert(x);
    return s;
}

// Class-level maximality verification. Necessary conditions first
// (self-normalizing, not contained in another candidate class), then the
// closure test: exhaustive over g outside M when |G| is small, seeded
// samples above the threshold.
bool verify_maximal(const GroupTable& g, const ElementSet& mset,
                    std::span<const uint32_t> gens, const EnumerationOptions& opts) {
    ElementSet n = normalizer(g, mset, gens);
    if (!(n == mset)) return false;

    std::vector<uint32_t> test_gens(gens.begin(), gens.end());
    test_gens.push_back(0);
    auto extends_to_g = [&](uint32_t x) {
        test_gens.back() = x;
        return g.generates(test_gens);
    };

    if (g.order() <= opts.full_check_threshold) {
        for (uint32_t x = 1; x < g.order(); ++x)
            if (!mset.test(x) && !extends_to_g(x)) return false;
        return true;
    }
    std::mt19937_64 rng(opts.seed ^ (uint64_t(g.p()) << 32) ^ mset.first() ^ mset.count());
    for (uint32_t k = 0; k < opts.maximality_samples; ++k) {
        uint32_t x;
        do {
            x = static_cast<uint32_t>(rng() % g.order());
        } while (mset.test(x));
        if (!extends_to_g(x)) return false;
    }
    return true;
}

uint64_t king_count(uint32_t p, uint32_t divisor) {
    return uint64_t(p) * (uint64_t(p) * p - 1) / divisor;
}

} // namespace

MaximalCatalog enumerate_maximal_subgroups(const GroupTable& g, const EnumerationOptions& opts) {
    uint32_t p = g.p();
    if (p <= 5)
        throw std::invalid_argument("maximal subgroup enumeration requires p > 5");
    uint32_t n = g.order();

    // Reference fingerprints must separate the Dickson list at this p.
    {
        std::vector<Fingerprint> refs;
        for (TypeTag tag : {TypeTag::Borel, TypeTag::DihedralPminus1, TypeTag::DihedralPplus1,
                            TypeTag::A4, TypeTag::S4, TypeTag::A5})
            refs.push_back(reference_fingerprint(tag, p));
        for (size_t i = 0; i < refs.size(); ++i)
            for (size_t j = i + 1; j < refs.size(); ++j)
                if (refs[i] == refs[j])
                    throw std::logic_error("reference fingerprints do not separate types");
    }

    SubgroupPool pool;
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> class_seeds; // (pool id, gens)

    auto add_seed = [&](std::vector<uint32_t> members) {
        std::sort(members.begin(), members.end());
        ElementSet mset = to_set(n, members);
        std::vector<uint32_t> gens = small_generators(g, mset);
        if (!(g.closure(gens) == mset))
            throw std::logic_error("candidate subgroup not closed under its generators");
        auto [id, fresh] = pool.insert(std::move(members));
        if (fresh) class_seeds.emplace_back(id, std::move(gens));
        return fresh;
    };

    // (a) Point stabilizer of [1:0]: the upper triangular matrices.
    {
        std::vector<uint32_t> stab;
        for (uint32_t i = 0; i < n; ++i)
            if (g.matrix_of(i).c == 0) stab.push_back(i);
        add_seed(std::move(stab));
    }

    // (b) Normalizers of the two cyclic tori.
    for (uint32_t torus_order : {(p - 1) / 2, (p + 1) / 2}) {
        uint32_t x0 = n;
        for (uint32_t i = 1; i < n; ++i)
            if (g.element_order(i) == torus_order) {
                x0 = i;
                break;
            }
        if (x0 == n) throw std::logic_error("no torus element of the expected order");
        ElementSet torus(n);
        uint32_t cur = GroupTable::identity();
        for (uint32_t k = 0; k < torus_order; ++k) {
            torus.insert(cur);
            cur = g.multiply(cur, x0);
        }
        std::vector<uint32_t> norm;
        for (uint32_t y = 0; y < n; ++y)
            if (torus.test(g.conjugate(x0, y))) norm.push_back(y);
        add_seed(std::move(norm));
    }

    // (c) Closures of (involution, order-3) pairs: every conjugacy class of
    // A4/S4/A5 subgroups contains such a pair through a fixed involution.
    {
        uint32_t t = n;
        for (uint32_t i = 1; i < n; ++i)
            if (g.element_order(i) == 2) {
                t = i;
                break;
            }
        if (t == n) throw std::logic_error("no involution found");
        std::array<uint32_t, 2> pair{t, 0};
        std::unordered_map<uint64_t, std::vector<const std::vector<uint32_t>*>> seen_local;
        for (uint32_t r = 1; r < n; ++r) {
            if (g.element_order(r) != 3) continue;
            pair[1] = r;
            bool exceeded = false;
            ElementSet cl = g.closure_bounded(pair, 60, &exceeded);
            if (exceeded) continue;
            uint32_t size = cl.count();
            if (size != 12 && size != 24 && size != 60) continue;
            IsoClass iso = small_iso(g, cl);
            if (iso.kind != IsoClass::Kind::A4 && iso.kind != IsoClass::Kind::S4 &&
                iso.kind != IsoClass::Kind::A5)
                continue;
            add_seed(cl.indices());
        }
    }

    // Saturate seeds into full conjugacy classes, discarding seeds that are
    // conjugates of an earlier class.
    struct PendingClass {
        ConjugacyClassOrbit orbit;
        TypeTag tag;
        uint32_t order;
    };
    std::vector<PendingClass> classes;
    std::unordered_map<uint64_t, std::vector<uint32_t>> absorbed; // hash -> pool ids
    auto is_absorbed = [&](uint32_t id) {
        uint64_t h = hash_members(pool.all[id]);
        auto it = absorbed.find(h);
        if (it == absorbed.end()) return false;
        for (uint32_t known : it->second)
            if (pool.all[known] == pool.all[id]) return true;
        return false;
    };
    for (auto& [seed_id, seed_gens] : class_seeds) {
        if (is_absorbed(seed_id)) continue;
        ConjugacyClassOrbit orbit = saturate(g, pool, seed_id, seed_gens);
        for (uint32_t id : orbit.subgroup_ids)
            absorbed[hash_members(pool.all[id])].push_back(id);
        ElementSet rep = to_set(n, pool.all[orbit.subgroup_ids[0]]);
        TypeTag tag = classify(g, rep);
        uint32_t order = rep.count();
        classes.push_back({std::move(orbit), tag, order});
    }

    // Containment filter between candidate classes: a class whose
    // representative lies inside a member of a larger class is not maximal
    // (catches A4 inside S4/A5 where sampling would be blind).
    std::vector<bool> keep(classes.size(), true);
    for (size_t i = 0; i < classes.size(); ++i) {
        const auto& small = pool.all[classes[i].orbit.subgroup_ids[0]];
        for (size_t j = 0; j < classes.size() && keep[i]; ++j) {
            if (i == j || classes[j].order <= classes[i].order) continue;
            for (uint32_t big_id : classes[j].orbit.subgroup_ids) {
                const auto& big = pool.all[big_id];
                if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }

    // Closure-based maximality verification per surviving class.
    for (size_t i = 0; i < classes.size(); ++i) {
        if (!keep[i]) continue;
        ElementSet rep = to_set(n, pool.all[classes[i].orbit.subgroup_ids[0]]);
        keep[i] = verify_maximal(g, rep, classes[i].orbit.gens[0], opts);
    }

    // Assemble the catalog in canonical (membership-lexicographic) order.
    struct Entry {
        const std::vector<uint32_t>* members;
        std::vector<uint32_t> gens;
        TypeTag tag;
        size_t class_pos;
    };
    std::vector<Entry> entries;
    for (size_t i = 0; i < classes.size(); ++i) {
        if (!keep[i]) continue;
        if (classes[i].tag == TypeTag::Other)
            throw std::logic_error("maximal subgroup outside the Dickson list at p = " +
                                   std::to_string(p));
        for (size_t k = 0; k < classes[i].orbit.subgroup_ids.size(); ++k)
            entries.push_back({&pool.all[classes[i].orbit.subgroup_ids[k]],
                               classes[i].orbit.gens[k], classes[i].tag, i});
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return *a.members < *b.members; });
    for (size_t k = 1; k < entries.size(); ++k)
        if (*entries[k].members == *entries[k - 1].members)
            throw std::logic_error("duplicate maximal subgroup across classes");

    MaximalCatalog cat;
    std::map<size_t, uint32_t> class_renumber; // first appearance order
    for (size_t k = 0; k < entries.size(); ++k)
        if (!class_renumber.count(entries[k].class_pos)) {
            uint32_t cid = static_cast<uint32_t>(class_renumber.size());
            class_renumber[entries[k].class_pos] = cid;
            cat.classes_.push_back({entries[k].tag, 0, static_cast<uint32_t>(k)});
        }
    for (const Entry& e : entries) {
        MaximalSubgroup m;
        m.set = to_set(n, *e.members);
        m.tag = e.tag;
        m.class_id = class_renumber[e.class_pos];
        m.generators = e.gens;
        m.order = static_cast<uint32_t>(e.members->size());
        cat.classes_[m.class_id].size += 1;
        cat.items_.push_back(std::move(m));
    }

    // Element -> containing-subgroup membership rows.
    uint32_t kcount = cat.size();
    cat.words_ = (kcount + 63) / 64;
    cat.membership_.assign(uint64_t(n) * cat.words_, 0);
    for (uint32_t k = 0; k < kcount; ++k)
        cat.items_[k].set.for_each([&](uint32_t x) {
            cat.membership_[uint64_t(x) * cat.words_ + (k >> 6)] |= 1ULL << (k & 63);
        });

    // ---- completeness certification ----
    // (1) Every nonidentity element lies in at least one listed subgroup.
    for (uint32_t x = 1; x < n; ++x) {
        auto row = cat.containing(x);
        bool any = false;
        for (uint32_t w = 0; w < cat.words_; ++w) any = any || row[w];
        if (!any)
            throw std::logic_error("element " + std::to_string(x) +
                                   " lies in no enumerated maximal subgroup");
    }
    // (2) Per-class counts equal |G| / |normalizer of representative|.
    for (const auto& ci : cat.classes_) {
        const MaximalSubgroup& rep = cat.items_[ci.rep_index];
        ElementSet nrm = normalizer(g, rep.set, rep.generators);
        if (uint64_t(ci.size) * nrm.count() != uint64_t(n))
            throw std::logic_error("class size disagrees with normalizer index");
    }
    // (3) Census against the closed forms.
    auto census = cat.census();
    if (census[TypeTag::Borel] != p + 1)
        throw std::logic_error("Borel census mismatch");
    bool mod8 = (p % 8 == 1 || p % 8 == 7);
    bool mod10 = (p % 10 == 1 || p % 10 == 9);
    if (mod8 != (census[TypeTag::S4] > 0) ||
        (mod8 && census[TypeTag::S4] != king_count(p, 24)))
        throw std::logic_error("S4 census disagrees with the mod-8 condition");
    if (mod10 != (census[TypeTag::A5] > 0) ||
        (mod10 && census[TypeTag::A5] != king_count(p, 60)))
        throw std::logic_error("A5 census disagrees with the mod-10 condition");
    bool a4_expected = !mod8 && !mod10;
    if (a4_expected != (census[TypeTag::A4] > 0))
        throw std::logic_error("A4 presence disagrees with the congruence conditions");

    return cat;
}

std::vector<TypeCount> count_by_type(const GroupTable& g) {
    uint32_t n = g.order();
    uint32_t p = g.p();
    uint32_t t = n;
    for (uint32_t i = 1; i < n; ++i)
        if (g.element_order(i) == 2) {
            t = i;
            break;
        }
    if (t == n) throw std::logic_error("no involution found");

    // Exhaustive (involution, order-3/5) sweep through a fixed involution
    // finds a representative of every conjugacy class of S3/D10/S4/A5 (and
    // A4) subgroups; conjugate saturation then counts each class.
    SubgroupPool pool;
    std::vector<uint32_t> seeds;
    std::array<uint32_t, 2> pair{t, 0};
    for (uint32_t r = 1; r < n; ++r) {
        uint32_t ord = g.element_order(r);
        if (ord != 3 && ord != 5) continue;
        pair[1] = r;
        bool exceeded = false;
        ElementSet cl = g.closure_bounded(pair, 60, &exceeded);
        if (exceeded) continue;
        uint32_t size = cl.count();
        if (size != 6 && size != 10 && size != 24 && size != 60) continue;
        IsoClass iso = small_iso(g, cl);
        bool wanted = (iso.kind == IsoClass::Kind::Dihedral && (size == 6 || size == 10)) ||
                      iso.kind == IsoClass::Kind::S4 || iso.kind == IsoClass::Kind::A5;
        if (!wanted) continue;
        auto [id, fresh] = pool.insert(cl.indices());
        if (fresh) seeds.push_back(id);
    }

    std::map<IsoClass, TypeCount> counts;
    std::unordered_map<uint64_t, std::vector<uint32_t>> absorbed;
    auto is_absorbed = [&](uint32_t id) {
        auto it = absorbed.find(hash_members(pool.all[id]));
        if (it == absorbed.end()) return false;
        for (uint32_t known : it->second)
            if (pool.all[known] == pool.all[id]) return true;
        return false;
    };
    for (uint32_t seed : seeds) {
        if (is_absorbed(seed)) continue;
        ElementSet rep_set = to_set(n, pool.all[seed]);
        std::vector<uint32_t> gens = small_generators(g, rep_set);
        ConjugacyClassOrbit orbit = saturate(g, pool, seed, gens);
        for (uint32_t id : orbit.subgroup_ids)
            absorbed[hash_members(pool.all[id])].push_back(id);
        IsoClass iso = small_iso(g, rep_set);
        // Conjugate count certified two ways: orbit size and |G|/|N(rep)|.
        ElementSet nrm = normalizer(g, rep_set, gens);
        if (uint64_t(orbit.subgroup_ids.size()) * nrm.count() != uint64_t(n))
            throw std::logic_error("conjugate count disagrees with normalizer index");
        auto& tc = counts[iso];
        tc.iso = iso;
        tc.count += orbit.subgroup_ids.size();
        tc.class_count += 1;
    }

    std::vector<TypeCount> out;
    bool mod10 = (p % 10 == 1 || p % 10 == 9);
    bool mod8 = (p % 8 == 1 || p % 8 == 7);
    for (auto& [iso, tc] : counts) {
        if (iso.kind == IsoClass::Kind::Dihedral && iso.order == 10 && !mod10) continue;
        if (iso.kind == IsoClass::Kind::S4 && !mod8) continue;
        if (iso.kind == IsoClass::Kind::A5 && !mod10) continue;
        out.push_back(tc);
    }
    return out;
}

IntersectingPair find_intersecting_pair(const GroupTable& g, const MaximalCatalog& maximals,
                                        TypeTag tag, const IsoClass& target) {
    std::vector<uint32_t> candidates;
    for (uint32_t i = 0; i < maximals.size(); ++i)
        if (maximals[i].tag == tag) candidates.push_back(i);
    if (candidates.empty())
        throw std::invalid_argument("no maximal subgroups of type " + type_label(tag, g.p()) +
                                    " at p = " + std::to_string(g.p()));
    for (size_t a = 0; a < candidates.size(); ++a)
        for (size_t b = a + 1; b < candidates.size(); ++b) {
            ElementSet inter =
                ElementSet::intersection(maximals[candidates[a]].set, maximals[candidates[b]].set);
            if (inter.count() != target.order) continue;
            if (small_iso(g, inter) == target)
                return {candidates[a], candidates[b], std::move(inter)};
        }
    throw std::logic_error("no pair of " + type_label(tag, g.p()) + " subgroups intersecting in " +
                           target.label() + " (would falsify the counting lemma)");
}

} // namespace psl2rp
