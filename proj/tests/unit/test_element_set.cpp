#include <doctest.h>

#include <random>
#include <set>

#include "psl2rp/element_set.hpp"

using namespace psl2rp;

TEST_CASE("element set against a std::set model") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        uint32_t universe = 1 + rng() % 300;
        ElementSet a(universe), b(universe);
        std::set<uint32_t> ma, mb;
        for (uint32_t i = 0; i < universe; ++i) {
            if (rng() & 1) {
                a.insert(i);
                ma.insert(i);
            }
            if (rng() & 1) {
                b.insert(i);
                mb.insert(i);
            }
        }
        CHECK(a.count() == ma.size());
        ElementSet inter = ElementSet::intersection(a, b);
        std::set<uint32_t> mi;
        for (uint32_t x : ma)
            if (mb.count(x)) mi.insert(x);
        CHECK(inter.indices() == std::vector<uint32_t>(mi.begin(), mi.end()));
        CHECK(inter.subset_of(a));
        CHECK(inter.subset_of(b));

        bool shares = false;
        for (uint32_t x : mi) shares = shares || x != 0;
        CHECK(a.shares_nonidentity(b) == shares);
    }
}

TEST_CASE("membership-lexicographic comparison") {
    ElementSet a(100), b(100);
    a.insert(3);
    b.insert(5);
    CHECK(ElementSet::compare(a, b) < 0); // 3 before 5
    b.insert(3);
    // {3} vs {3,5}: the first distinguishing element is 5, owned by b.
    CHECK(ElementSet::compare(b, a) < 0);
    ElementSet c(100);
    c.insert(2);
    c.insert(90);
    CHECK(ElementSet::compare(c, a) < 0); // 2 beats 3 regardless of the tail
    CHECK(ElementSet::compare(a, a) == 0);
}

TEST_CASE("erase and count caching") {
    ElementSet s(64);
    for (uint32_t i = 0; i < 64; i += 2) s.insert(i);
    CHECK(s.count() == 32);
    s.erase(0);
    CHECK(s.count() == 31);
    CHECK(!s.test(0));
    CHECK(s.first() == 2);
}
