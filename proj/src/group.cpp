#include "psl2rp/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psl2rp {

namespace {

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

uint32_t GroupTable::lookup(const ProjMatrix& m) const {
    uint64_t key = pack_key(m);
    uint64_t slot = splitmix(key) & hash_mask_;
    while (true) {
        uint64_t k = hash_keys_[slot];
        if (k == key) return hash_vals_[slot];
        if (k == ~0ULL) throw std::logic_error("matrix not in group table");
        slot = (slot + 1) & hash_mask_;
    }
}

uint32_t GroupTable::index_of(const ProjMatrix& m) const {
    if (det_mod(m, p_) != 1) throw std::invalid_argument("matrix determinant is not 1 mod p");
    return lookup(canonical(m, p_));
}

GroupTable GroupTable::build(uint32_t p_in, const BuildOptions& opts) {
    Prime prime(p_in, opts.allow_p5);
    uint32_t p = prime.value();

    GroupTable g;
    g.p_ = p;

    // Enumerate SL(2,p): a != 0 fixes d = (1+bc)/a; a = 0 needs bc = -1.
    std::vector<ProjMatrix> elems;
    elems.reserve(prime.group_order());
    for (uint32_t a = 1; a < p; ++a) {
        uint32_t ainv = mod_inv(a, p);
        for (uint32_t b = 0; b < p; ++b)
            for (uint32_t c = 0; c < p; ++c) {
                uint32_t d = mod_mul(1 + mod_mul(b, c, p), ainv, p);
                ProjMatrix m{static_cast<uint16_t>(a), static_cast<uint16_t>(b),
                             static_cast<uint16_t>(c), static_cast<uint16_t>(d)};
                ProjMatrix cm = canonical(m, p);
                if (cm == m) elems.push_back(m); // keep one of {M,-M}
            }
    }
    for (uint32_t b = 1; b < p; ++b) {
        uint32_t c = mod_neg(mod_inv(b, p), p);
        for (uint32_t d = 0; d < p; ++d) {
            ProjMatrix m{0, static_cast<uint16_t>(b), static_cast<uint16_t>(c),
                         static_cast<uint16_t>(d)};
            ProjMatrix cm = canonical(m, p);
            if (cm == m) elems.push_back(m);
        }
    }

    if (elems.size() != prime.group_order())
        throw std::logic_error("PSL(2,p) census mismatch during construction");

    // Identity pinned at index 0, everything else lexicographic.
    ProjMatrix id{1, 0, 0, 1};
    std::sort(elems.begin(), elems.end());
    auto it = std::lower_bound(elems.begin(), elems.end(), id);
    elems.erase(it);
    elems.insert(elems.begin(), id);

    g.elems_ = std::move(elems);
    g.order_ = static_cast<uint32_t>(g.elems_.size());
    g.finish_build();

    if (g.order_ <= opts.mul_table_threshold) {
        g.mul_table_.resize(uint64_t(g.order_) * g.order_);
        for (uint32_t i = 0; i < g.order_; ++i)
            for (uint32_t j = 0; j < g.order_; ++j)
                g.mul_table_[uint64_t(i) * g.order_ + j] =
                    g.lookup(mat_mul(g.elems_[i], g.elems_[j], p));
    }
    return g;
}

void GroupTable::finish_build() {
    // Index hash, sized for load factor <= 0.5.
    uint64_t cap = 1;
    while (cap < uint64_t(order_) * 2) cap <<= 1;
    hash_mask_ = cap - 1;
    hash_keys_.assign(cap, ~0ULL);
    hash_vals_.assign(cap, 0);
    for (uint32_t i = 0; i < order_; ++i) {
        uint64_t key = pack_key(elems_[i]);
        uint64_t slot = splitmix(key) & hash_mask_;
        while (hash_keys_[slot] != ~0ULL) slot = (slot + 1) & hash_mask_;
        hash_keys_[slot] = key;
        hash_vals_[slot] = i;
    }

    inv_.resize(order_);
    for (uint32_t i = 0; i < order_; ++i) inv_[i] = lookup(mat_inv(elems_[i], p_));
    for (uint32_t i = 0; i < order_; ++i)
        if (inv_[inv_[i]] != i) throw std::logic_error("inverse table inconsistent");

    elem_order_.assign(order_, 0);
    elem_order_[0] = 1;
    for (uint32_t i = 1; i < order_; ++i) {
        if (elem_order_[i]) continue;
        // Walk <i> once and assign orders to every power. powers holds
        // g^0 .. g^{n-1}, so its size is the order of i.
        std::vector<uint32_t> powers{0};
        uint32_t x = i;
        while (x != 0) {
            powers.push_back(x);
            x = multiply(x, i);
        }
        uint32_t n = static_cast<uint32_t>(powers.size());
        for (uint32_t k = 1; k < n; ++k)
            elem_order_[powers[k]] = n / std::gcd(n, k);
    }

    gen_t_ = lookup(canonical(ProjMatrix{1, 1, 0, 1}, p_));
    gen_u_ = lookup(canonical(ProjMatrix{1, 0, 1, 1}, p_));

    // Conjugacy classes: orbits under conjugation by the standard
    // generators, which generate the whole group (asserted below).
    class_id_.assign(order_, order_);
    class_reps_.clear();
    std::vector<uint32_t> frontier;
    for (uint32_t i = 0; i < order_; ++i) {
        if (class_id_[i] != order_) continue;
        uint32_t cid = static_cast<uint32_t>(class_reps_.size());
        class_reps_.push_back(i);
        class_id_[i] = cid;
        frontier.assign(1, i);
        while (!frontier.empty()) {
            uint32_t x = frontier.back();
            frontier.pop_back();
            for (uint32_t s : {gen_t_, gen_u_}) {
                uint32_t y = conjugate(x, s);
                if (class_id_[y] == order_) {
                    class_id_[y] = cid;
                    frontier.push_back(y);
                }
            }
        }
    }

    // Cyclic subgroup representatives.
    cyclic_rep_.assign(order_, order_);
    cyclic_rep_[0] = 0;
    cyclic_rep_list_.assign(1, 0);
    for (uint32_t i = 1; i < order_; ++i) {
        if (cyclic_rep_[i] != order_) continue;
        cyclic_rep_list_.push_back(i);
        uint32_t n = elem_order_[i];
        uint32_t x = i;
        for (uint32_t k = 1; k <= n; ++k) { // assign to the generators of <i>
            if (std::gcd(n, k) == 1) cyclic_rep_[x] = i;
            x = multiply(x, i);
        }
    }

    std::array<uint32_t, 2> gens = standard_generators();
    if (!generates(gens))
        throw std::logic_error("standard generators failed to generate PSL(2,p)");
}

uint32_t GroupTable::power(uint32_t g, uint64_t e) const {
    uint32_t r = identity(), b = g;
    while (e) {
        if (e & 1) r = multiply(r, b);
        b = multiply(b, b);
        e >>= 1;
    }
    return r;
}

std::vector<uint64_t> GroupTable::class_sizes() const {
    std::vector<uint64_t> sizes(class_reps_.size(), 0);
    for (uint32_t i = 0; i < order_; ++i) ++sizes[class_id_[i]];
    return sizes;
}

ElementSet GroupTable::closure(std::span<const uint32_t> gens) const {
    return closure_bounded(gens, order_, nullptr);
}

ElementSet GroupTable::closure_bounded(std::span<const uint32_t> gens, uint32_t cap,
                                       bool* exceeded) const {
    if (gens.empty()) throw std::invalid_argument("closure of empty generator set");
    if (exceeded) *exceeded = false;
    ElementSet s(order_);
    s.insert(identity());
    uint32_t size = 1;
    std::vector<uint32_t> frontier{identity()};
    while (!frontier.empty()) {
        uint32_t x = frontier.back();
        frontier.pop_back();
        for (uint32_t gen : gens) {
            uint32_t y = multiply(x, gen);
            if (!s.test(y)) {
                s.insert(y);
                frontier.push_back(y);
                if (++size > cap) {
                    if (exceeded) *exceeded = true;
                    return s;
                }
            }
        }
    }
    return s;
}

} // namespace psl2rp
