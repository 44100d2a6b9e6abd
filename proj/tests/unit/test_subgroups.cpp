#include <doctest.h>

#include "oracle_support.hpp"
#include "psl2rp/analysis.hpp"
#include "psl2rp/lattice.hpp"

using namespace psl2rp;

namespace {

const AnalysisContext& ctx7() {
    static AnalysisContext ctx = AnalysisContext::create(7, {});
    return ctx;
}
const AnalysisContext& ctx11() {
    static AnalysisContext ctx = AnalysisContext::create(11, {});
    return ctx;
}
const AnalysisContext& ctx13() {
    static AnalysisContext ctx = AnalysisContext::create(13, {});
    return ctx;
}
const AnalysisContext& ctx17() {
    static AnalysisContext ctx = AnalysisContext::create(17, {});
    return ctx;
}

uint64_t census_of(const AnalysisContext& ctx, TypeTag tag) {
    auto census = ctx.maximals.census();
    auto it = census.find(tag);
    return it == census.end() ? 0 : it->second;
}

} // namespace

TEST_CASE("reference fingerprints match the permutation-model oracles") {
    CHECK(reference_fingerprint(TypeTag::A4, 7).order_multiset ==
          oracle::perm_order_multiset(4, true));
    CHECK(reference_fingerprint(TypeTag::S4, 7).order_multiset ==
          oracle::perm_order_multiset(4, false));
    CHECK(reference_fingerprint(TypeTag::A5, 11).order_multiset ==
          oracle::perm_order_multiset(5, true));
    // Frozen values for the record (computed by the oracles above).
    std::map<uint32_t, uint32_t> a5{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
    CHECK(reference_fingerprint(TypeTag::A5, 11).order_multiset == a5);
    std::map<uint32_t, uint32_t> s4{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
    CHECK(reference_fingerprint(TypeTag::S4, 7).order_multiset == s4);
    std::map<uint32_t, uint32_t> a4{{1, 1}, {2, 3}, {3, 8}};
    CHECK(reference_fingerprint(TypeTag::A4, 7).order_multiset == a4);
}

TEST_CASE("maximal censuses") {
    CHECK(census_of(ctx7(), TypeTag::Borel) == 8);
    CHECK(census_of(ctx7(), TypeTag::S4) == 14);
    CHECK(census_of(ctx7(), TypeTag::DihedralPminus1) == 0); // D6 is not maximal at p=7
    CHECK(census_of(ctx7(), TypeTag::DihedralPplus1) == 0);  // nor is D8
    CHECK(ctx7().maximals.size() == 22);

    CHECK(census_of(ctx11(), TypeTag::Borel) == 12);
    CHECK(census_of(ctx11(), TypeTag::DihedralPplus1) == 55);
    CHECK(census_of(ctx11(), TypeTag::A5) == 22);
    CHECK(census_of(ctx11(), TypeTag::DihedralPminus1) == 0); // D10 inside A5

    CHECK(census_of(ctx13(), TypeTag::Borel) == 14);
    CHECK(census_of(ctx13(), TypeTag::DihedralPminus1) == 91);
    CHECK(census_of(ctx13(), TypeTag::DihedralPplus1) == 78);
    CHECK(census_of(ctx13(), TypeTag::A4) == 91);

    CHECK(census_of(ctx17(), TypeTag::Borel) == 18);
    CHECK(census_of(ctx17(), TypeTag::DihedralPminus1) == 153);
    CHECK(census_of(ctx17(), TypeTag::DihedralPplus1) == 136);
    CHECK(census_of(ctx17(), TypeTag::S4) == 204);
}

TEST_CASE("catalog equals the maximal members of the two-generated lattice") {
    for (const AnalysisContext* ctx : {&ctx7(), &ctx11()}) {
        auto subs = oracle::brute_two_generated_subgroups(ctx->group);
        auto maximal = oracle::maximal_under_inclusion(std::move(subs));
        REQUIRE(maximal.size() == ctx->maximals.size());
        for (uint32_t i = 0; i < ctx->maximals.size(); ++i)
            CHECK(maximal[i] == ctx->maximals[i].set);
    }
}

TEST_CASE("maximality is verified, not assumed") {
    const AnalysisContext& ctx = ctx7();
    const GroupTable& g = ctx.group;
    for (const auto& m : ctx.maximals.items()) {
        CHECK(g.closure(m.generators) == m.set);
        std::vector<uint32_t> gens = m.generators;
        gens.push_back(0);
        for (uint32_t x = 1; x < g.order(); ++x) {
            if (m.set.test(x)) continue;
            gens.back() = x;
            CHECK(g.generates(gens));
        }
    }
}

TEST_CASE("intersections") {
    const AnalysisContext& ctx = ctx17();
    const ElementSet& a = ctx.maximals[0].set;
    CHECK(ElementSet::intersection(a, a) == a);
    ElementSet trivial(ctx.group.order());
    trivial.insert(GroupTable::identity());
    CHECK(ElementSet::intersection(a, trivial) == trivial);

    auto pair = find_intersecting_pair(ctx.group, ctx.maximals, TypeTag::S4,
                                       IsoClass{IsoClass::Kind::Dihedral, 6});
    CHECK(pair.intersection.count() == 6);
    CHECK(small_iso(ctx.group, pair.intersection).label() == "S3");
    CHECK(ctx.maximals[pair.first].tag == TypeTag::S4);
    CHECK(ctx.maximals[pair.second].tag == TypeTag::S4);
    CHECK(pair.first != pair.second);
}

TEST_CASE("A5 pairs intersect in D10 at p=11") {
    auto pair = find_intersecting_pair(ctx11().group, ctx11().maximals, TypeTag::A5,
                                       IsoClass{IsoClass::Kind::Dihedral, 10});
    CHECK(pair.intersection.count() == 10);
}

TEST_CASE("no S4 pair exists when p = +-3 mod 8") {
    CHECK_THROWS_AS(find_intersecting_pair(ctx13().group, ctx13().maximals, TypeTag::S4,
                                           IsoClass{IsoClass::Kind::Dihedral, 6}),
                    std::invalid_argument);
}

TEST_CASE("classification of catalog members") {
    for (const auto& m : ctx13().maximals.items())
        CHECK(classify(ctx13().group, m.set) == m.tag);
    for (const auto& ci : ctx11().maximals.classes())
        if (ci.tag == TypeTag::A5) {
            Fingerprint fp = fingerprint_of(ctx11().group, ctx11().maximals[ci.rep_index].set);
            CHECK(fp.order == 60);
            CHECK(!fp.abelian);
            CHECK(fp.center_size == 1);
        }
}

TEST_CASE("normalizers and centralizers") {
    const AnalysisContext& ctx = ctx7();
    const GroupTable& g = ctx.group;
    CHECK(centralizer(g, GroupTable::identity()).count() == g.order());
    // Maximal subgroups of a simple group are self-normalizing.
    for (const auto& ci : ctx.maximals.classes()) {
        const auto& rep = ctx.maximals[ci.rep_index];
        CHECK(normalizer(g, rep.set, rep.generators) == rep.set);
    }
}

TEST_CASE("involution centralizer is a maximal dihedral subgroup when p = +-1 mod 8") {
    const AnalysisContext& ctx = ctx17(); // 17 = +1 mod 8, centralizer D_{p-1}
    const GroupTable& g = ctx.group;
    uint32_t w = 0;
    for (uint32_t i = 1; i < g.order(); ++i)
        if (g.element_order(i) == 2) {
            w = i;
            break;
        }
    ElementSet cent = centralizer(g, w);
    CHECK(cent.count() == 16);
    bool found = false;
    for (const auto& m : ctx.maximals.items())
        if (m.set == cent) {
            found = true;
            CHECK(m.tag == TypeTag::DihedralPminus1);
        }
    CHECK(found);
}

TEST_CASE("frattini subgroup is trivial") {
    CHECK(frattini(ctx7().group, ctx7().maximals).count() == 1);
    CHECK(frattini(ctx13().group, ctx13().maximals).count() == 1);
    // Monotonicity: intersecting over more subgroups only shrinks the set.
    ElementSet partial = ctx13().maximals[0].set;
    partial.intersect_with(ctx13().maximals[1].set);
    CHECK(frattini(ctx13().group, ctx13().maximals).subset_of(partial));
}

TEST_CASE("counting lemmas at small p") {
    auto counts = [](const AnalysisContext& ctx) {
        std::map<std::string, uint64_t> by_label;
        for (const auto& tc : count_by_type(ctx.group)) by_label[tc.iso.label()] = tc.count;
        return by_label;
    };
    auto c7 = counts(ctx7());
    CHECK(c7["S3"] == 28); // 7*48/12
    auto c11 = counts(ctx11());
    CHECK(c11["S3"] == 110);
    CHECK(c11["D10"] == 66); // 11*120/20
    CHECK(c11["A5"] == 22);
    auto c13 = counts(ctx13());
    CHECK(c13["S3"] == 182); // 13*168/12
    auto c17 = counts(ctx17());
    CHECK(c17["S3"] == 408);
    CHECK(c17["S4"] == 204); // 17*288/24
}

TEST_CASE("no common normal subgroup of two distinct maximal subgroups") {
    // Lemma norms, machine-checked at p=7: no nontrivial N inside M1 ^ M2 is
    // normal in both.
    const AnalysisContext& ctx = ctx7();
    const GroupTable& g = ctx.group;
    auto normal_in = [&](const ElementSet& n, const MaximalSubgroup& m) {
        for (uint32_t gen : m.generators) {
            bool stable = true;
            n.for_each([&](uint32_t x) {
                if (stable && !n.test(g.conjugate(x, gen))) stable = false;
            });
            if (!stable) return false;
        }
        return true;
    };
    for (uint32_t i = 0; i < ctx.maximals.size(); ++i)
        for (uint32_t j = i + 1; j < ctx.maximals.size(); ++j) {
            ElementSet inter =
                ElementSet::intersection(ctx.maximals[i].set, ctx.maximals[j].set);
            if (inter.count() <= 1) continue;
            SubgroupLattice lat = all_subgroups_small(g, inter);
            for (uint32_t n = 1; n < lat.nodes.size(); ++n) {
                if (lat.nodes[n].count() == 1) continue;
                bool both = normal_in(lat.nodes[n], ctx.maximals[i]) &&
                            normal_in(lat.nodes[n], ctx.maximals[j]);
                CHECK(!both);
            }
        }
}
