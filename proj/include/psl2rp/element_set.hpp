#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace psl2rp {

// Membership bit-vector over element indices: the universal currency for
// subgroups and their intersections. Index 0 is always the group identity,
// so "nontrivial" tests mask out bit 0 of word 0.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(uint32_t universe, bool full = false)
        : universe_(universe), words_((universe + 63) / 64, full ? ~0ULL : 0ULL) {
        if (full) {
            trim();
            count_ = universe;
        } else {
            count_ = 0;
        }
    }

    uint32_t universe() const { return universe_; }

    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }

    void insert(uint32_t i) {
        uint64_t& w = words_[i >> 6];
        uint64_t bit = 1ULL << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            if (count_ >= 0) ++count_;
        }
    }

    void erase(uint32_t i) {
        uint64_t& w = words_[i >> 6];
        uint64_t bit = 1ULL << (i & 63);
        if (w & bit) {
            w &= ~bit;
            if (count_ >= 0) --count_;
        }
    }

    uint32_t count() const {
        if (count_ < 0) {
            uint64_t n = 0;
            for (uint64_t w : words_) n += std::popcount(w);
            count_ = static_cast<int64_t>(n);
        }
        return static_cast<uint32_t>(count_);
    }

    bool empty() const { return count() == 0; }

    void intersect_with(const ElementSet& o) {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        count_ = -1;
    }

    void unite_with(const ElementSet& o) {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        count_ = -1;
    }

    static ElementSet intersection(const ElementSet& x, const ElementSet& y) {
        ElementSet r = x;
        r.intersect_with(y);
        return r;
    }

    bool subset_of(const ElementSet& o) const {
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    // Shares any element other than the identity (index 0)?
    bool shares_nonidentity(const ElementSet& o) const {
        check_same(o);
        if (words_.empty()) return false;
        if ((words_[0] & o.words_[0]) >> 1) return true;
        for (size_t i = 1; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    uint32_t first() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<uint32_t>(i * 64 + std::countr_zero(words_[i]));
        return universe_;
    }

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                f(static_cast<uint32_t>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<uint32_t> indices() const {
        std::vector<uint32_t> v;
        v.reserve(count());
        for_each([&](uint32_t i) { v.push_back(i); });
        return v;
    }

    friend bool operator==(const ElementSet& x, const ElementSet& y) {
        return x.universe_ == y.universe_ && x.words_ == y.words_;
    }

    // Total order on subsets of the same universe: compare sorted member
    // lists lexicographically (the set containing the smaller first
    // distinguishing element comes first). Used for canonical subgroup order.
    static int compare(const ElementSet& x, const ElementSet& y) {
        x.check_same(y);
        for (size_t i = 0; i < x.words_.size(); ++i) {
            uint64_t diff = x.words_[i] ^ y.words_[i];
            if (diff) {
                uint64_t low = diff & -diff;
                return (x.words_[i] & low) ? -1 : 1;
            }
        }
        return 0;
    }

    uint64_t hash() const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> mutable_words() {
        count_ = -1;
        return words_;
    }

private:
    void check_same(const ElementSet& o) const {
        if (universe_ != o.universe_) throw std::logic_error("ElementSet universe mismatch");
    }
    void trim() {
        if (universe_ % 64 && !words_.empty()) words_.back() &= (1ULL << (universe_ % 64)) - 1;
    }

    uint32_t universe_ = 0;
    mutable int64_t count_ = -1;
    std::vector<uint64_t> words_;
};

} // namespace psl2rp
