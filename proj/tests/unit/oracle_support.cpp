#include "oracle_support.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace oracle {

using namespace psl2rp;

uint64_t brute_group_order(uint32_t p) {
    // Count SL(2,p) by scanning every matrix, then identify M with -M.
    uint64_t sl = 0;
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b)
            for (uint32_t c = 0; c < p; ++c)
                for (uint32_t d = 0; d < p; ++d)
                    if ((a * d % p + p - b * c % p) % p == 1) ++sl;
    return sl / 2; // p odd: M != -M always
}

namespace {

using Perm = std::array<uint8_t, 5>;

Perm compose(const Perm& f, const Perm& g) {
    Perm r{};
    for (int i = 0; i < 5; ++i) r[i] = f[g[i]];
    return r;
}

uint32_t order_of(const Perm& x) {
    Perm id{0, 1, 2, 3, 4};
    Perm cur = x;
    uint32_t n = 1;
    while (cur != id) {
        cur = compose(cur, x);
        ++n;
    }
    return n;
}

bool is_even(const Perm& x, int degree) {
    int swaps = 0;
    std::array<bool, 5> seen{};
    for (int i = 0; i < degree; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = x[j];
            ++len;
        }
        swaps += len - 1;
    }
    return swaps % 2 == 0;
}

} // namespace

std::map<uint32_t, uint32_t> perm_order_multiset(int degree, bool even_only) {
    std::vector<uint8_t> idx(degree);
    std::iota(idx.begin(), idx.end(), 0);
    std::map<uint32_t, uint32_t> multiset;
    do {
        Perm x{0, 1, 2, 3, 4};
        for (int i = 0; i < degree; ++i) x[i] = idx[i];
        if (!even_only || is_even(x, degree)) ++multiset[order_of(x)];
    } while (std::next_permutation(idx.begin(), idx.end()));
    return multiset;
}

uint32_t brute_class_count(const GroupTable& g) {
    std::vector<bool> seen(g.order(), false);
    uint32_t classes = 0;
    for (uint32_t i = 0; i < g.order(); ++i) {
        if (seen[i]) continue;
        ++classes;
        for (uint32_t x = 0; x < g.order(); ++x) seen[g.conjugate(i, x)] = true;
    }
    return classes;
}

std::vector<ElementSet> brute_two_generated_subgroups(const GroupTable& g) {
    std::vector<ElementSet> out;
    auto add = [&](const ElementSet& s) {
        for (const ElementSet& known : out)
            if (known == s) return;
        out.push_back(s);
    };
    ElementSet trivial(g.order());
    trivial.insert(GroupTable::identity());
    add(trivial);
    auto reps = g.cyclic_reps();
    for (size_t i = 1; i < reps.size(); ++i) {
        std::array<uint32_t, 1> one{reps[i]};
        add(g.closure(one));
        for (size_t j = i + 1; j < reps.size(); ++j) {
            std::array<uint32_t, 2> pair{reps[i], reps[j]};
            add(g.closure(pair));
        }
    }
    return out;
}

std::vector<ElementSet> maximal_under_inclusion(std::vector<ElementSet> subs) {
    std::vector<ElementSet> out;
    for (size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].count() == subs[i].universe()) continue; // the whole group
        bool top = true;
        for (size_t j = 0; j < subs.size() && top; ++j) {
            if (i == j || subs[j].count() == subs[j].universe()) continue;
            if (subs[i].count() < subs[j].count() && subs[i].subset_of(subs[j])) top = false;
        }
        if (top) out.push_back(subs[i]);
    }
    std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
        return ElementSet::compare(a, b) < 0;
    });
    return out;
}

} // namespace oracle
