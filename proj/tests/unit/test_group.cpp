#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracle_support.hpp"
#include "psl2rp/group.hpp"

using namespace psl2rp;

TEST_CASE("prime validation") {
    CHECK_THROWS_AS(GroupTable::build(4), std::invalid_argument);
    CHECK_THROWS_AS(GroupTable::build(6), std::invalid_argument);
    CHECK_THROWS_AS(GroupTable::build(5), std::invalid_argument);
    BuildOptions allow;
    allow.allow_p5 = true;
    CHECK(GroupTable::build(5, allow).order() == 60);
    CHECK(Prime(7).group_order() == 168);
}

TEST_CASE("group orders match the brute-force census") {
    CHECK(GroupTable::build(7).order() == oracle::brute_group_order(7));
    CHECK(GroupTable::build(7).order() == 168);
    CHECK(GroupTable::build(13).order() == oracle::brute_group_order(13));
    CHECK(GroupTable::build(13).order() == 1092);
}

TEST_CASE("canonical form is an idempotent two-to-one map") {
    const uint32_t p = 7;
    std::set<ProjMatrix> canon;
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b)
            for (uint32_t c = 0; c < p; ++c)
                for (uint32_t d = 0; d < p; ++d) {
                    ProjMatrix m{uint16_t(a), uint16_t(b), uint16_t(c), uint16_t(d)};
                    if (det_mod(m, p) != 1) continue;
                    ProjMatrix neg{uint16_t(mod_neg(a, p)), uint16_t(mod_neg(b, p)),
                                   uint16_t(mod_neg(c, p)), uint16_t(mod_neg(d, p))};
                    ProjMatrix cm = canonical(m, p);
                    CHECK(canonical(neg, p) == cm);
                    CHECK(canonical(cm, p) == cm);
                    canon.insert(cm);
                }
    CHECK(canon.size() == 168);
}

TEST_CASE("multiplication, inverses, identity") {
    GroupTable g = GroupTable::build(7);
    CHECK(g.matrix_of(GroupTable::identity()) == ProjMatrix{1, 0, 0, 1});

    uint32_t x = g.index_of(ProjMatrix{1, 1, 0, 1});
    uint32_t y = g.index_of(ProjMatrix{1, 0, 1, 1});
    CHECK(g.multiply(GroupTable::identity(), x) == x);
    CHECK(g.multiply(x, GroupTable::identity()) == x);
    CHECK(g.multiply(x, y) == g.index_of(ProjMatrix{2, 1, 1, 1}));

    for (uint32_t i = 0; i < g.order(); ++i) {
        CHECK(g.multiply(i, g.inverse(i)) == GroupTable::identity());
        CHECK(g.inverse(g.inverse(i)) == i);
    }
    CHECK_THROWS_AS(g.index_of(ProjMatrix{1, 0, 0, 2}), std::invalid_argument);
}

TEST_CASE("associativity spot-check on seeded random triples") {
    GroupTable g = GroupTable::build(13);
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 1000; ++t) {
        uint32_t a = rng() % g.order(), b = rng() % g.order(), c = rng() % g.order();
        CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
    }
}

TEST_CASE("element orders") {
    GroupTable g = GroupTable::build(7);
    CHECK(g.element_order(GroupTable::identity()) == 1);
    CHECK(g.element_order(g.index_of(ProjMatrix{1, 1, 0, 1})) == 7); // unipotent
    // [[0,1],[-1,0]] squares to -I, which is the identity in PSL.
    CHECK(g.element_order(g.index_of(ProjMatrix{0, 1, 6, 0})) == 2);

    for (uint32_t i = 1; i < g.order(); ++i) {
        uint32_t ord = g.element_order(i);
        bool divides = (ord == 7) || (3 % ord == 0) || (4 % ord == 0); // (p-1)/2, (p+1)/2
        CHECK(divides);
        CHECK(g.power(i, ord) == GroupTable::identity());
        for (uint32_t k = 1; k < ord; ++k) CHECK(g.power(i, k) != GroupTable::identity());
    }
}

TEST_CASE("closure basics") {
    GroupTable g = GroupTable::build(7);
    std::array<uint32_t, 1> ident{GroupTable::identity()};
    CHECK(g.closure(ident).count() == 1);

    std::array<uint32_t, 2> unip{g.index_of(ProjMatrix{1, 1, 0, 1}),
                                 g.index_of(ProjMatrix{1, 0, 1, 1})};
    CHECK(g.closure(unip).count() == g.order());
    CHECK(g.generates(unip));

    for (uint32_t i = 0; i < g.order(); ++i) {
        std::array<uint32_t, 1> one{i};
        CHECK(g.closure(one).count() == g.element_order(i));
    }
}

TEST_CASE("closure is independent of generator order") {
    GroupTable g = GroupTable::build(11);
    std::mt19937_64 rng(777);
    for (int t = 0; t < 20; ++t) {
        std::vector<uint32_t> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(1 + rng() % (g.order() - 1));
        ElementSet base = g.closure(gens);
        std::vector<uint32_t> shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(g.closure(shuffled) == base);
    }
}

TEST_CASE("conjugacy classes") {
    GroupTable g = GroupTable::build(7);
    CHECK(g.class_of(GroupTable::identity()) == 0);
    auto sizes = g.class_sizes();
    CHECK(sizes[0] == 1); // identity is a singleton
    CHECK(std::accumulate(sizes.begin(), sizes.end(), uint64_t(0)) == g.order());
    CHECK(g.class_count() == 6);
    CHECK(g.class_count() == oracle::brute_class_count(g));

    // Class representatives carry the lowest index of their class.
    for (uint32_t i = 0; i < g.order(); ++i)
        CHECK(g.class_representatives()[g.class_of(i)] <= i);
}

TEST_CASE("cyclic representatives partition generators") {
    GroupTable g = GroupTable::build(7);
    for (uint32_t i = 1; i < g.order(); ++i) {
        uint32_t rep = g.cyclic_rep(i);
        CHECK(rep <= i);
        CHECK(g.element_order(rep) == g.element_order(i));
        std::array<uint32_t, 1> a{i}, b{rep};
        CHECK(g.closure(a) == g.closure(b));
    }
}
