#pragma once

#include "psl2rp/certificate.hpp"

namespace psl2rp {

enum class Verdict { Holds, Fails, Unresolved };
std::string verdict_name(Verdict v);

// Closed-form verdict: holds for p in {7,11,19,31}; otherwise holds iff
// p = +-3 mod 8 and p = +-3 mod 10. Constant time, no group built.
Verdict predict_rp(uint32_t p);

// {} when RP holds; {2} when it fails and p != +-1 mod 10; {2,3} otherwise.
std::vector<uint32_t> predict_witness_orders(uint32_t p);

struct WitnessInfo {
    uint32_t element = 0;
    uint32_t order = 0;
};

struct RPReport {
    uint32_t p = 0;
    Verdict verdict = Verdict::Unresolved;
    uint32_t m = 0;
    bool m_verified = false; // exhaustive compute_m, else Jambor's theorem
    std::vector<WitnessInfo> witnesses;
    std::vector<FailureCertificate> certificates; // one per witness conjugacy class
    TupleStats stats;
    uint64_t projected_work = 0;
    Verdict prediction = Verdict::Unresolved;
    bool agreement = false;
    bool from_oracle = false;
};

// The radical criterion: RP holds iff no general-position m-tuple with
// nontrivial radical is realizable. W(G) is the union of radicals of the
// realizable tuples; every witness is replay-verified definitionally.
RPReport check_rp(const AnalysisContext& ctx, uint32_t m, bool m_verified);

struct OracleOptions {
    uint64_t max_closures = 400'000'000;
};

// Definition-level brute force over Gamma_m with replacement tests by
// closure; no maximal-subgroup data involved. Cross-validates check_rp at
// small p.
RPReport oracle_check_rp(const GroupTable& g, uint32_t m, const OracleOptions& opts = {});

} // namespace psl2rp
