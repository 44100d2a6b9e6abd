#pragma once

#include <cstdint>
#include <stdexcept>

namespace psl2rp {

// Deterministic primality by trial division; p is bounded by config (<= a few
// hundred in practice), so nothing fancier is warranted.
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// A validated odd prime p > 5. p = 5 is admitted only behind the explicit
// override (PSL(2,5) ~ A5 is outside the Dickson list this tool relies on).
class Prime {
public:
    explicit Prime(uint32_t p, bool allow_p5 = false) : value_(p) {
        if (!is_prime(p))
            throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
        if (p < 5 || (p == 5 && !allow_p5))
            throw std::invalid_argument("p = " + std::to_string(p) +
                                        " is out of range (need p > 5, or p = 5 with override)");
    }

    uint32_t value() const { return value_; }
    operator uint32_t() const { return value_; }

    // |PSL(2,p)| = p(p^2-1)/2
    uint64_t group_order() const {
        uint64_t p = value_;
        return p * (p * p - 1) / 2;
    }

private:
    uint32_t value_;
};

} // namespace psl2rp
