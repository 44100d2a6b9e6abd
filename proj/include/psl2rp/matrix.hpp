#pragma once

#include <array>
#include <cstdint>

namespace psl2rp {

// Canonical representative of a determinant-1 matrix [[a,b],[c,d]] over F_p
// modulo +-I. Convention: the first nonzero entry in scan order (a,b,c,d)
// lies in {1,...,(p-1)/2}; exactly one of {M,-M} satisfies this for odd p,
// so equality of canonical forms is plain memberwise comparison.
struct ProjMatrix {
    uint16_t a = 0, b = 0, c = 0, d = 0;

    friend bool operator==(const ProjMatrix&, const ProjMatrix&) = default;
    friend auto operator<=>(const ProjMatrix&, const ProjMatrix&) = default;

    std::array<uint16_t, 4> entries() const { return {a, b, c, d}; }
};

inline uint32_t mod_mul(uint32_t x, uint32_t y, uint32_t p) { return (x * y) % p; }
inline uint32_t mod_add(uint32_t x, uint32_t y, uint32_t p) { return (x + y) % p; }
inline uint32_t mod_neg(uint32_t x, uint32_t p) { return x ? p - x : 0; }

inline uint32_t mod_pow(uint32_t x, uint32_t e, uint32_t p) {
    uint64_t r = 1, b = x % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

// Fermat inverse; p prime, x != 0 mod p.
inline uint32_t mod_inv(uint32_t x, uint32_t p) { return mod_pow(x % p, p - 2, p); }

inline uint32_t det_mod(const ProjMatrix& m, uint32_t p) {
    uint32_t ad = mod_mul(m.a, m.d, p);
    uint32_t bc = mod_mul(m.b, m.c, p);
    return (ad + p - bc) % p;
}

inline ProjMatrix canonical(ProjMatrix m, uint32_t p) {
    uint32_t half = (p - 1) / 2;
    uint32_t lead = m.a ? m.a : (m.b ? m.b : (m.c ? m.c : m.d));
    if (lead > half) {
        m.a = static_cast<uint16_t>(mod_neg(m.a, p));
        m.b = static_cast<uint16_t>(mod_neg(m.b, p));
        m.c = static_cast<uint16_t>(mod_neg(m.c, p));
        m.d = static_cast<uint16_t>(mod_neg(m.d, p));
    }
    return m;
}

inline ProjMatrix mat_mul(const ProjMatrix& x, const ProjMatrix& y, uint32_t p) {
    ProjMatrix r;
    r.a = static_cast<uint16_t>((uint32_t(x.a) * y.a + uint32_t(x.b) * y.c) % p);
    r.b = static_cast<uint16_t>((uint32_t(x.a) * y.b + uint32_t(x.b) * y.d) % p);
    r.c = static_cast<uint16_t>((uint32_t(x.c) * y.a + uint32_t(x.d) * y.c) % p);
    r.d = static_cast<uint16_t>((uint32_t(x.c) * y.b + uint32_t(x.d) * y.d) % p);
    return canonical(r, p);
}

// Adjugate; for det 1 this is the inverse.
inline ProjMatrix mat_inv(const ProjMatrix& m, uint32_t p) {
    ProjMatrix r;
    r.a = m.d;
    r.b = static_cast<uint16_t>(mod_neg(m.b, p));
    r.c = static_cast<uint16_t>(mod_neg(m.c, p));
    r.d = m.a;
    return canonical(r, p);
}

// Entries are < p <= a few hundred, so 10 bits each pack into a uint64 key.
inline uint64_t pack_key(const ProjMatrix& m) {
    return uint64_t(m.a) | (uint64_t(m.b) << 10) | (uint64_t(m.c) << 20) | (uint64_t(m.d) << 30);
}

} // namespace psl2rp
