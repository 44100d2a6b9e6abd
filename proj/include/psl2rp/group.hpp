#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psl2rp/element_set.hpp"
#include "psl2rp/matrix.hpp"
#include "psl2rp/prime.hpp"

namespace psl2rp {

struct BuildOptions {
    bool allow_p5 = false;
    // A full |G| x |G| product table is only materialized below this order.
    uint32_t mul_table_threshold = 5000;
};

// PSL(2,p) as a concrete indexed group. Immutable after construction; all
// queries are pure reads and safe to share across threads.
class GroupTable {
public:
    static GroupTable build(uint32_t p, const BuildOptions& opts = {});

    uint32_t p() const { return p_; }
    uint32_t order() const { return order_; }
    static constexpr uint32_t identity() { return 0; }

    const ProjMatrix& matrix_of(uint32_t g) const { return elems_[g]; }
    uint32_t index_of(const ProjMatrix& m) const; // throws if not in the group

    uint32_t multiply(uint32_t g, uint32_t h) const {
        if (!mul_table_.empty()) return mul_table_[uint64_t(g) * order_ + h];
        return lookup(mat_mul(elems_[g], elems_[h], p_));
    }
    uint32_t inverse(uint32_t g) const { return inv_[g]; }
    // x g x^-1
    uint32_t conjugate(uint32_t g, uint32_t x) const {
        return multiply(multiply(x, g), inv_[x]);
    }
    uint32_t power(uint32_t g, uint64_t e) const;

    uint32_t element_order(uint32_t g) const { return elem_order_[g]; }
    // Least prime dividing the element order; 1 for the identity.
    bool has_prime_order(uint32_t g) const { return is_prime(elem_order_[g]); }

    // Conjugacy classes, canonical representative = lowest index in class.
    uint32_t class_count() const { return static_cast<uint32_t>(class_reps_.size()); }
    uint32_t class_of(uint32_t g) const { return class_id_[g]; }
    std::span<const uint32_t> class_representatives() const { return class_reps_; }
    std::vector<uint64_t> class_sizes() const;

    // Canonical generator of <g>: the lowest-index element generating the
    // same cyclic subgroup. Elements are interchangeable for generation
    // tests exactly when their reps agree.
    uint32_t cyclic_rep(uint32_t g) const { return cyclic_rep_[g]; }
    std::span<const uint32_t> cyclic_reps() const { return cyclic_rep_list_; }

    // Least subset containing the generators, closed under the product
    // (inverses are powers, so one-sided word closure suffices).
    ElementSet closure(std::span<const uint32_t> gens) const;
    // Stops once the running size exceeds cap; *exceeded reports that. A
    // proper subgroup never exceeds cap = order/2 (Lagrange), so
    // closure_bounded(gens, order()/2) decides generation cheaply.
    ElementSet closure_bounded(std::span<const uint32_t> gens, uint32_t cap,
                               bool* exceeded = nullptr) const;
    bool generates(std::span<const uint32_t> gens) const {
        bool ex = false;
        closure_bounded(gens, order_ / 2, &ex);
        return ex;
    }

    // Standard generators [[1,1],[0,1]] and [[1,0],[1,1]].
    std::array<uint32_t, 2> standard_generators() const { return {gen_t_, gen_u_}; }

    // Raw access used by the on-disk cache.
    std::span<const ProjMatrix> elements() const { return elems_; }

private:
    GroupTable() = default;
    void finish_build(); // hash, inverses, orders, classes, cyclic reps
    uint32_t lookup(const ProjMatrix& m) const;

    uint32_t p_ = 0;
    uint32_t order_ = 0;
    std::vector<ProjMatrix> elems_;
    std::vector<uint32_t> inv_;
    std::vector<uint32_t> elem_order_;
    std::vector<uint32_t> class_id_;
    std::vector<uint32_t> class_reps_;
    std::vector<uint32_t> cyclic_rep_;
    std::vector<uint32_t> cyclic_rep_list_;
    std::vector<uint32_t> mul_table_;
    uint32_t gen_t_ = 0, gen_u_ = 0;

    // Open-addressing index: packed matrix key -> element index.
    std::vector<uint64_t> hash_keys_;
    std::vector<uint32_t> hash_vals_;
    uint64_t hash_mask_ = 0;

    friend class TableCache;
};

} // namespace psl2rp
