#pragma once

#include <string>

#include "psl2rp/genseq.hpp"
#include "psl2rp/tuples.hpp"

#include <nlohmann/json_fwd.hpp>

namespace psl2rp {

struct DiagramNode {
    std::string id;
    std::string label; // e.g. "M1 = S4", "<w> = Z2"
};

struct Diagram {
    std::vector<DiagramNode> nodes;
    std::vector<std::pair<std::string, std::string>> edges; // (lower, upper) containments
};

std::string diagram_dot(const Diagram& d, const std::string& title);

// Replayable evidence of a replacement-property failure: a general-position
// tuple, a corresponding irredundant generating sequence, and a radical
// element that fails every replacement. Self-contained: replay needs only
// the group table.
struct FailureCertificate {
    uint32_t p = 0;
    std::string variant; // case1 | case2 | order3 | search
    uint32_t m = 0;
    struct Member {
        std::string tag;
        std::vector<ProjMatrix> generators;
    };
    std::vector<Member> tuple;
    std::vector<ProjMatrix> sequence;
    ProjMatrix witness;
    uint32_t radical_size = 0;
    std::vector<uint32_t> replay_sizes; // |<s with witness at i>| per position
    Diagram diagram;                    // in-memory companion, not serialized
};

// Wrap an in-context failure (catalog indices + sequence + witness) into a
// certificate, re-verifying everything definitionally on the way.
FailureCertificate certificate_from_parts(const AnalysisContext& ctx,
                                          std::span<const uint32_t> members, const GenSeq& seq,
                                          uint32_t witness, const std::string& variant);

// Explicit failure constructions. Variants: case1 needs p = +-1 mod 8,
// case2/order3 need p = +-1 mod 10; all need a failing p.
FailureCertificate construct_failure_certificate(const AnalysisContext& ctx,
                                                 const std::string& variant);
std::vector<std::string> applicable_variants(uint32_t p);

// The order-3 triple configuration (two A5 over an A4, dihedral cap, Z3
// radical). Valid at every p = +-1 mod 10 including the exceptional primes,
// where it is a structure check only (never a W(G) witness).
struct Order3Structure {
    std::vector<uint32_t> members; // (dihedral, A5, A5) catalog indices
    GenSeq sequence;
    uint32_t witness; // order-3 element spanning the radical
    Diagram diagram;
};
Order3Structure build_order3_configuration(const AnalysisContext& ctx);

nlohmann::json certificate_to_json(const FailureCertificate& cert);
FailureCertificate certificate_from_json(const nlohmann::json& j);

struct ReplayResult {
    bool ok = false;
    std::string failed_check; // first failing check name, empty on success
};

// Independent re-verification using only group closures (no catalog, no
// tuple machinery). Any single-field mutation of a valid certificate fails
// one of the named checks.
ReplayResult replay_certificate(const nlohmann::json& j, const AnalysisOptions& opts = {});
// Same checks against a caller-provided group table (p must match).
ReplayResult replay_certificate(const nlohmann::json& j, const GroupTable& g);

} // namespace psl2rp
