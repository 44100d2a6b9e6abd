#include <doctest.h>

#include <random>

#include "psl2rp/genseq.hpp"
#include "psl2rp/tuples.hpp"

using namespace psl2rp;

namespace {

const AnalysisContext& ctx7() {
    static AnalysisContext ctx = AnalysisContext::create(7, {});
    return ctx;
}
const AnalysisContext& ctx13() {
    static AnalysisContext ctx = AnalysisContext::create(13, {});
    return ctx;
}

} // namespace

TEST_CASE("sequences never contain the identity") {
    CHECK_THROWS_AS(GenSeq({GroupTable::identity()}), std::invalid_argument);
    CHECK_THROWS_AS(GenSeq(std::vector<uint32_t>{}), std::invalid_argument);
}

TEST_CASE("generation and irredundance basics") {
    const GroupTable& g = ctx7().group;
    uint32_t t = g.index_of(ProjMatrix{1, 1, 0, 1});
    uint32_t u = g.index_of(ProjMatrix{1, 0, 1, 1});
    GenSeq pair({t, u});
    CHECK(is_generating(g, pair));
    CHECK(is_irredundant(g, pair)); // singles never generate a simple noncyclic group

    for (uint32_t rep : g.cyclic_reps()) {
        if (rep == GroupTable::identity()) continue;
        CHECK(!is_generating(g, GenSeq({rep})));
    }

    // A sequence inside a single maximal subgroup never generates.
    const MaximalSubgroup& m = ctx7().maximals[0];
    std::vector<uint32_t> inside;
    m.set.for_each([&](uint32_t e) {
        if (e != GroupTable::identity() && inside.size() < 3) inside.push_back(e);
    });
    CHECK(!is_generating(g, GenSeq(inside)));

    CHECK(!is_irredundant(g, GenSeq({t, t})));

    // (g, g^2, h) is redundant whenever <g^2> = <g>.
    uint32_t g3 = 0;
    for (uint32_t i = 1; i < g.order(); ++i)
        if (g.element_order(i) == 7) {
            g3 = i;
            break;
        }
    uint32_t gsq = g.multiply(g3, g3);
    CHECK(g.cyclic_rep(gsq) == g.cyclic_rep(g3));
    GenSeq triple({g3, gsq, u});
    CHECK(!is_irredundant(g, triple));
}

TEST_CASE("corresponding maximal subgroups") {
    const AnalysisContext& ctx = ctx13();
    GammaResult res = gamma_nonempty(ctx, 2);
    REQUIRE(res.nonempty);
    const GenSeq& s = *res.witness;
    std::vector<uint32_t> tuple = corresponding_maximals(ctx, s);
    REQUIRE(tuple.size() == 2);
    // g_i in M_j for j != i, g_i outside M_i; in particular M_1 contains <g_2>.
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j)
            CHECK(ctx.maximals[tuple[j]].set.test(s.elems[i]) == (i != j));
    CHECK(in_general_position(ctx, tuple));

    GammaResult res3 = gamma_nonempty(ctx, 3);
    REQUIRE(res3.nonempty);
    std::vector<uint32_t> tuple3 = corresponding_maximals(ctx, *res3.witness);
    CHECK(in_general_position(ctx, tuple3));
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j)
            CHECK(ctx.maximals[tuple3[j]].set.test(res3.witness->elems[i]) == (i != j));
}

TEST_CASE("gamma_nonempty across lengths") {
    CHECK(!gamma_nonempty(ctx7(), 1).nonempty);
    CHECK(gamma_nonempty(ctx7(), 2).nonempty);
    CHECK(gamma_nonempty(ctx7(), 3).nonempty);
    CHECK(gamma_nonempty(ctx7(), 4).nonempty); // m(PSL(2,7)) = 4
    CHECK(!gamma_nonempty(ctx7(), 5).nonempty);

    CHECK(gamma_nonempty(ctx13(), 2).nonempty);
    CHECK(gamma_nonempty(ctx13(), 3).nonempty);
    CHECK(!gamma_nonempty(ctx13(), 4).nonempty); // m(PSL(2,13)) = 3
}

TEST_CASE("gamma witnesses are re-verified irredundant generating sequences") {
    for (uint32_t n : {2u, 3u, 4u}) {
        GammaResult res = gamma_nonempty(ctx7(), n);
        REQUIRE(res.nonempty);
        CHECK(res.witness->length() == n);
        CHECK(is_generating(ctx7().group, *res.witness));
        CHECK(is_irredundant(ctx7().group, *res.witness));
    }
}

TEST_CASE("irredundance and generation are conjugation invariant") {
    const GroupTable& g = ctx7().group;
    GammaResult res = gamma_nonempty(ctx7(), 3);
    REQUIRE(res.nonempty);
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 10; ++t) {
        uint32_t h = rng() % g.order();
        std::vector<uint32_t> conj;
        for (uint32_t e : res.witness->elems) conj.push_back(g.conjugate(e, h));
        GenSeq cs(conj);
        CHECK(is_generating(g, cs));
        CHECK(is_irredundant(g, cs));
    }
}

TEST_CASE("sequences realized from general-position tuples are irredundant") {
    const AnalysisContext& ctx = ctx7();
    uint32_t tested = 0;
    enumerate_gp_tuples(ctx, 2, false, [&](const MaximalTuple& t) {
        if (tested >= 25) return;
        if (auto seq = realize_tuple(ctx, t.members)) {
            ++tested;
            CHECK(is_irredundant(ctx.group, *seq));
            CHECK(is_generating(ctx.group, *seq));
            for (uint32_t i = 0; i < 2; ++i)
                for (uint32_t j = 0; j < 2; ++j)
                    CHECK(ctx.maximals[t.members[j]].set.test(seq->elems[i]) == (i != j));
        }
    });
    CHECK(tested > 0);
}

TEST_CASE("compute_r and compute_m") {
    CHECK(compute_r(ctx7()) == 2);
    CHECK(compute_r(ctx13()) == 2);

    MResult m7 = compute_m(ctx7());
    CHECK(m7.value == 4);
    CHECK(m7.verified);
    CHECK(m7.value == jambor_m(7));

    MResult m13 = compute_m(ctx13());
    CHECK(m13.value == 3);
    CHECK(m13.verified);
    CHECK(m13.value == jambor_m(13));
}

TEST_CASE("jambor table") {
    CHECK(jambor_m(7) == 4);
    CHECK(jambor_m(11) == 4);
    CHECK(jambor_m(19) == 4);
    CHECK(jambor_m(31) == 4);
    CHECK(jambor_m(13) == 3);
    CHECK(jambor_m(41) == 3);
    CHECK_THROWS_AS(jambor_m(9), std::invalid_argument);
}
