#include "psl2rp/certificate.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psl2rp/lattice.hpp"
#include "psl2rp/rp.hpp"

namespace psl2rp {

namespace {

using json = nlohmann::json;

std::optional<uint32_t> find_catalog_member(const AnalysisContext& ctx, const ElementSet& set) {
    uint32_t count = set.count();
    for (uint32_t i = 0; i < ctx.maximals.size(); ++i)
        if (ctx.maximals[i].order == count && ctx.maximals[i].set == set) return i;
    return std::nullopt;
}

// |<s with w at position i>| for each i; throws if any replacement
// regenerates G (then w is no failure witness at all).
std::vector<uint32_t> replacement_sizes(const GroupTable& g, const GenSeq& seq, uint32_t w) {
    std::vector<uint32_t> sizes;
    std::vector<uint32_t> replaced = seq.elems;
    for (uint32_t i = 0; i < seq.length(); ++i) {
        uint32_t keep = replaced[i];
        replaced[i] = w;
        bool exceeded = false;
        ElementSet cl = g.closure_bounded(replaced, g.order() / 2, &exceeded);
        replaced[i] = keep;
        if (exceeded) throw std::logic_error("replacement regenerates G; not a failure witness");
        sizes.push_back(cl.count());
    }
    return sizes;
}

void verify_failure_parts(const AnalysisContext& ctx, std::span<const uint32_t> members,
                          const GenSeq& seq, uint32_t witness) {
    const GroupTable& g = ctx.group;
    if (members.size() != seq.length())
        throw std::invalid_argument("tuple and sequence lengths differ");
    for (uint32_t i = 0; i < seq.length(); ++i)
        for (uint32_t j = 0; j < seq.length(); ++j) {
            bool inside = ctx.maximals[members[j]].set.test(seq.elems[i]);
            if ((i == j) == inside)
                throw std::logic_error("sequence does not correspond to the tuple");
        }
    if (!in_general_position(ctx, members))
        throw std::logic_error("tuple is not in general position");
    ElementSet rad = tuple_radical(ctx, members);
    if (witness == GroupTable::identity() || !rad.test(witness))
        throw std::logic_error("witness is not a nontrivial radical element");
    if (!is_generating(g, seq) || !is_irredundant(g, seq))
        throw std::logic_error("sequence is not an irredundant generating sequence");
}

DiagramNode node(const std::string& id, const std::string& iso) {
    return {id, id + " = " + iso};
}

} // namespace

std::string diagram_dot(const Diagram& d, const std::string& title) {
    std::ostringstream os;
    os << "// schema_version 1\n";
    os << "graph failure {\n  label=\"" << title << "\";\n  rankdir=BT;\n";
    for (const auto& n : d.nodes) os << "  \"" << n.id << "\" [label=\"" << n.label << "\"];\n";
    for (const auto& [lo, hi] : d.edges) os << "  \"" << lo << "\" -- \"" << hi << "\";\n";
    os << "}\n";
    return os.str();
}

FailureCertificate certificate_from_parts(const AnalysisContext& ctx,
                                          std::span<const uint32_t> members, const GenSeq& seq,
                                          uint32_t witness, const std::string& variant) {
    verify_failure_parts(ctx, members, seq, witness);
    const GroupTable& g = ctx.group;

    FailureCertificate cert;
    cert.p = ctx.p();
    cert.variant = variant;
    cert.m = seq.length();
    for (uint32_t m : members) {
        FailureCertificate::Member member;
        member.tag = type_label(ctx.maximals[m].tag, ctx.p());
        for (uint32_t e : ctx.maximals[m].generators) member.generators.push_back(g.matrix_of(e));
        cert.tuple.push_back(std::move(member));
    }
    for (uint32_t e : seq.elems) cert.sequence.push_back(g.matrix_of(e));
    cert.witness = g.matrix_of(witness);
    cert.radical_size = tuple_radical(ctx, members).count();
    cert.replay_sizes = replacement_sizes(g, seq, witness);
    return cert;
}

std::vector<std::string> applicable_variants(uint32_t p) {
    std::vector<std::string> out;
    if (predict_rp(p) != Verdict::Fails) return out;
    if (p % 8 == 1 || p % 8 == 7) out.push_back("case1");
    if (p % 10 == 1 || p % 10 == 9) {
        out.push_back("case2");
        out.push_back("order3");
    }
    return out;
}

namespace {

// The unique Klein four-subgroup of M containing w: {1, w, x, y} where x, y
// are the involutions of M commuting with w. Fails (nullopt) when the
// commuting involutions are not exactly two or do not close up.
std::optional<std::array<uint32_t, 2>> klein_partners(const GroupTable& g, const ElementSet& m,
                                                      uint32_t w) {
    std::vector<uint32_t> partners;
    m.for_each([&](uint32_t x) {
        if (x != w && g.element_order(x) == 2 && g.multiply(x, w) == g.multiply(w, x))
            partners.push_back(x);
    });
    if (partners.size() != 2) return std::nullopt;
    if (g.multiply(partners[0], partners[1]) != w) return std::nullopt;
    return std::array<uint32_t, 2>{partners[0], partners[1]};
}

struct DihedralPairConfig {
    uint32_t m1, m2, m3; // catalog indices, paper labels (m2 = centralizer)
    uint32_t w;          // involution spanning the radical
    GenSeq seq;          // (g1, g2, g3), g_i outside member i
    std::array<uint32_t, 2> klein_a, klein_b;
    ElementSet inter13;
};

// Shared engine of Cases 1 and 2: two subgroups of `tag` meeting in a
// middle subgroup (S3 resp. D10), an involution w in the middle, the Klein
// subgroups over w, and M2 = C(w). g2 has order `g2_order` (3 resp. 5);
// in Case 1 g1 must additionally be conjugate to w inside M3.
std::optional<DihedralPairConfig> dihedral_pair_config(const AnalysisContext& ctx, TypeTag tag,
                                                       const IsoClass& middle, uint32_t g2_order,
                                                       bool g1_conjugate_in_m3) {
    const GroupTable& g = ctx.group;
    std::vector<uint32_t> same_tag;
    for (uint32_t i = 0; i < ctx.maximals.size(); ++i)
        if (ctx.maximals[i].tag == tag) same_tag.push_back(i);

    for (size_t a = 0; a < same_tag.size(); ++a) {
        for (size_t b = a + 1; b < same_tag.size(); ++b) {
            uint32_t m1 = same_tag[a], m3 = same_tag[b];
            ElementSet inter =
                ElementSet::intersection(ctx.maximals[m1].set, ctx.maximals[m3].set);
            if (inter.count() != middle.order || !(small_iso(g, inter) == middle)) continue;

            std::vector<uint32_t> involutions, g2_candidates;
            inter.for_each([&](uint32_t x) {
                if (g.element_order(x) == 2) involutions.push_back(x);
                if (g.element_order(x) == g2_order) g2_candidates.push_back(x);
            });

            for (uint32_t w : involutions) {
                auto ka = klein_partners(g, ctx.maximals[m1].set, w);
                auto kb = klein_partners(g, ctx.maximals[m3].set, w);
                if (!ka || !kb) continue;

                ElementSet cent = centralizer(g, w);
                auto m2 = find_catalog_member(ctx, cent);
                if (!m2) continue; // centralizer not maximal: try another w
                TypeTag t2 = ctx.maximals[*m2].tag;
                if (t2 != TypeTag::DihedralPminus1 && t2 != TypeTag::DihedralPplus1) continue;
                bool holds_ab = true;
                for (uint32_t x : *ka) holds_ab = holds_ab && cent.test(x);
                for (uint32_t x : *kb) holds_ab = holds_ab && cent.test(x);
                if (!holds_ab) continue;

                // Radical must be exactly <w>.
                ElementSet rad = inter;
                rad.intersect_with(cent);
                if (rad.count() != 2 || !rad.test(w)) continue;

                uint32_t g2 = g.order();
                for (uint32_t x : g2_candidates)
                    if (!cent.test(x)) {
                        g2 = x;
                        break;
                    }
                if (g2 == g.order()) continue;

                uint32_t g1 = g.order();
                for (uint32_t x : *kb) {
                    if (ctx.maximals[m1].set.test(x)) continue;
                    if (g1_conjugate_in_m3) {
                        bool conj = false;
                        ctx.maximals[m3].set.for_each([&](uint32_t h) {
                            if (!conj && g.conjugate(w, h) == x) conj = true;
                        });
                        if (!conj) continue;
                    }
                    g1 = x;
                    break;
                }
                if (g1 == g.order()) continue;

                uint32_t g3 = g.order();
                for (uint32_t x : *ka)
                    if (!ctx.maximals[m3].set.test(x)) {
                        g3 = x;
                        break;
                    }
                if (g3 == g.order()) continue;

                // The pair (g1, g2) must regenerate M3 exactly.
                std::array<uint32_t, 2> pair{g1, g2};
                if (!(g.closure(pair) == ctx.maximals[m3].set)) continue;

                DihedralPairConfig cfg{m1,       *m2, m3, w, GenSeq({g1, g2, g3}),
                                       *ka,      *kb,
                                       std::move(inter)};
                return cfg;
            }
        }
    }
    return std::nullopt;
}

Diagram pair_diagram(const AnalysisContext& ctx, const DihedralPairConfig& cfg,
                     const std::string& middle_iso) {
    const GroupTable& g = ctx.group;
    uint32_t p = ctx.p();
    Diagram d;
    auto tag = [&](uint32_t m) { return type_label(ctx.maximals[m].tag, p); };
    d.nodes.push_back(node("M1", tag(cfg.m1)));
    d.nodes.push_back(node("M2", tag(cfg.m2) + " (centralizer of w)"));
    d.nodes.push_back(node("M3", tag(cfg.m3)));
    d.nodes.push_back(node("A", "Z2xZ2"));
    d.nodes.push_back(node("B", "Z2xZ2"));
    d.nodes.push_back(node("M1^M3", middle_iso));
    d.nodes.push_back(node("<g2>", "Z" + std::to_string(g.element_order(cfg.seq.elems[1]))));
    d.nodes.push_back(node("<g1>", "Z2"));
    d.nodes.push_back(node("<g3>", "Z2"));
    d.nodes.push_back(node("<w>", "Z2"));
    d.edges = {{"A", "M1"},      {"A", "M2"},       {"B", "M2"},   {"B", "M3"},
               {"M1^M3", "M1"},  {"M1^M3", "M3"},   {"<g3>", "A"}, {"<w>", "A"},
               {"<g2>", "M1^M3"}, {"<w>", "M1^M3"}, {"<g1>", "B"}, {"<w>", "B"}};
    return d;
}

} // namespace

Order3Structure build_order3_configuration(const AnalysisContext& ctx) {
    const GroupTable& g = ctx.group;
    uint32_t p = ctx.p();
    if (p % 10 != 1 && p % 10 != 9)
        throw std::invalid_argument("order-3 configuration needs p = +-1 mod 10");

    std::vector<uint32_t> a5s;
    for (uint32_t i = 0; i < ctx.maximals.size(); ++i)
        if (ctx.maximals[i].tag == TypeTag::A5) a5s.push_back(i);

    for (size_t a = 0; a < a5s.size(); ++a)
        for (size_t b = a + 1; b < a5s.size(); ++b) {
            uint32_t m2 = a5s[a], m3 = a5s[b];
            ElementSet inter =
                ElementSet::intersection(ctx.maximals[m2].set, ctx.maximals[m3].set);
            if (inter.count() != 12 || small_iso(g, inter).kind != IsoClass::Kind::A4) continue;

            std::vector<uint32_t> order3;
            inter.for_each([&](uint32_t x) {
                if (g.element_order(x) == 3) order3.push_back(x);
            });
            for (uint32_t w : order3) {
                // M1: a maximal dihedral subgroup through w with S3 slices.
                auto wrow = ctx.maximals.containing_indices(w);
                for (uint32_t m1 : wrow) {
                    TypeTag t1 = ctx.maximals[m1].tag;
                    if (t1 != TypeTag::DihedralPminus1 && t1 != TypeTag::DihedralPplus1) continue;
                    ElementSet i12 =
                        ElementSet::intersection(ctx.maximals[m1].set, ctx.maximals[m2].set);
                    if (i12.count() != 6 || small_iso(g, i12).kind != IsoClass::Kind::Dihedral)
                        continue;
                    ElementSet i13 =
                        ElementSet::intersection(ctx.maximals[m1].set, ctx.maximals[m3].set);
                    if (i13.count() != 6 || small_iso(g, i13).kind != IsoClass::Kind::Dihedral)
                        continue;
                    ElementSet rad = i12;
                    rad.intersect_with(ctx.maximals[m3].set);
                    if (rad.count() != 3 || !rad.test(w)) continue;

                    uint32_t g1 = g.order();
                    for (uint32_t x : order3)
                        if (g.cyclic_rep(x) != g.cyclic_rep(w) &&
                            !ctx.maximals[m1].set.test(x)) {
                            g1 = x;
                            break;
                        }
                    if (g1 == g.order()) continue;
                    uint32_t g2 = g.order();
                    i13.for_each([&](uint32_t x) {
                        if (g2 == g.order() && g.element_order(x) == 2 &&
                            !ctx.maximals[m2].set.test(x))
                            g2 = x;
                    });
                    if (g2 == g.order()) continue;
                    uint32_t g3 = g.order();
                    i12.for_each([&](uint32_t x) {
                        if (g3 == g.order() && g.element_order(x) == 2 &&
                            !ctx.maximals[m3].set.test(x))
                            g3 = x;
                    });
                    if (g3 == g.order()) continue;

                    std::array<uint32_t, 2> pair{g1, g3};
                    if (!(g.closure(pair) == ctx.maximals[m2].set)) continue;

                    std::vector<uint32_t> members{m1, m2, m3};
                    GenSeq seq({g1, g2, g3});
                    verify_failure_parts(ctx, members, seq, w);

                    Diagram d;
                    d.nodes.push_back(node("M1", type_label(t1, p)));
                    d.nodes.push_back(node("M2", "A5"));
                    d.nodes.push_back(node("M3", "A5"));
                    d.nodes.push_back(node("M1^M2", "S3"));
                    d.nodes.push_back(node("M2^M3", "A4"));
                    d.nodes.push_back(node("M1^M3", "S3"));
                    d.nodes.push_back(node("<g1>", "Z3"));
                    d.nodes.push_back(node("<g3>", "Z2"));
                    d.nodes.push_back(node("<w>", "Z3"));
                    d.nodes.push_back(node("<g2>", "Z2"));
                    d.edges = {{"M1^M2", "M1"},  {"M1^M3", "M1"},  {"M1^M2", "M2"},
                               {"M2^M3", "M2"},  {"M2^M3", "M3"},  {"M1^M3", "M3"},
                               {"<g3>", "M1^M2"}, {"<w>", "M1^M2"}, {"<g1>", "M2^M3"},
                               {"<w>", "M2^M3"},  {"<g2>", "M1^M3"}, {"<w>", "M1^M3"}};
                    return Order3Structure{members, std::move(seq), w, std::move(d)};
                }
            }
        }
    throw std::logic_error("order-3 configuration not found (would falsify the construction)");
}

FailureCertificate construct_failure_certificate(const AnalysisContext& ctx,
                                                 const std::string& variant) {
    uint32_t p = ctx.p();
    if (predict_rp(p) != Verdict::Fails)
        throw std::invalid_argument("RP holds at p = " + std::to_string(p) +
                                    "; no failure certificate exists");
    auto variants = applicable_variants(p);
    if (std::find(variants.begin(), variants.end(), variant) == variants.end())
        throw std::invalid_argument("variant '" + variant + "' is not applicable at p = " +
                                    std::to_string(p));

    if (variant == "case1" || variant == "case2") {
        bool case1 = (variant == "case1");
        auto cfg = case1 ? dihedral_pair_config(ctx, TypeTag::S4,
                                                IsoClass{IsoClass::Kind::Dihedral, 6}, 3, true)
                         : dihedral_pair_config(ctx, TypeTag::A5,
                                                IsoClass{IsoClass::Kind::Dihedral, 10}, 5, false);
        if (!cfg)
            throw std::logic_error("construction failed at p = " + std::to_string(p) +
                                   " (would falsify the failure construction)");
        std::vector<uint32_t> members{cfg->m1, cfg->m2, cfg->m3};
        FailureCertificate cert =
            certificate_from_parts(ctx, members, cfg->seq, cfg->w, variant);
        cert.diagram = pair_diagram(ctx, *cfg, case1 ? "S3" : "D10");
        return cert;
    }
    // order3
    Order3Structure s = build_order3_configuration(ctx);
    FailureCertificate cert =
        certificate_from_parts(ctx, s.members, s.sequence, s.witness, "order3");
    cert.diagram = std::move(s.diagram);
    return cert;
}

namespace {

json matrix_to_json(const ProjMatrix& m) { return json::array({m.a, m.b, m.c, m.d}); }

ProjMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix must be [a,b,c,d]");
    ProjMatrix m;
    m.a = j[0].get<uint16_t>();
    m.b = j[1].get<uint16_t>();
    m.c = j[2].get<uint16_t>();
    m.d = j[3].get<uint16_t>();
    return m;
}

} // namespace

json certificate_to_json(const FailureCertificate& cert) {
    json tuple = json::array();
    for (const auto& member : cert.tuple) {
        json gens = json::array();
        for (const auto& g : member.generators) gens.push_back(matrix_to_json(g));
        tuple.push_back({{"tag", member.tag}, {"generators", gens}});
    }
    json seq = json::array();
    for (const auto& g : cert.sequence) seq.push_back(matrix_to_json(g));
    return json{{"schema_version", 1},
                {"p", cert.p},
                {"variant", cert.variant},
                {"m", cert.m},
                {"tuple", tuple},
                {"sequence", seq},
                {"witness", matrix_to_json(cert.witness)},
                {"radical_size", cert.radical_size},
                {"replay", cert.replay_sizes}};
}

FailureCertificate certificate_from_json(const json& j) {
    FailureCertificate cert;
    cert.p = j.at("p").get<uint32_t>();
    cert.variant = j.at("variant").get<std::string>();
    cert.m = j.at("m").get<uint32_t>();
    for (const auto& member : j.at("tuple")) {
        FailureCertificate::Member m;
        m.tag = member.at("tag").get<std::string>();
        for (const auto& gj : member.at("generators")) m.generators.push_back(matrix_from_json(gj));
        cert.tuple.push_back(std::move(m));
    }
    for (const auto& gj : j.at("sequence")) cert.sequence.push_back(matrix_from_json(gj));
    cert.witness = matrix_from_json(j.at("witness"));
    cert.radical_size = j.at("radical_size").get<uint32_t>();
    cert.replay_sizes = j.at("replay").get<std::vector<uint32_t>>();
    return cert;
}

namespace {

// Expected structure per tag label, checked with fingerprints only (no
// catalog involved).
bool tag_matches(const GroupTable& g, const std::string& tag, const ElementSet& set) {
    uint32_t p = g.p();
    Fingerprint fp = fingerprint_of(g, set);
    if (tag == "Borel") return fp == reference_fingerprint(TypeTag::Borel, p);
    if (tag == "A4") return fp == reference_fingerprint(TypeTag::A4, p);
    if (tag == "S4") return fp == reference_fingerprint(TypeTag::S4, p);
    if (tag == "A5") return fp == reference_fingerprint(TypeTag::A5, p);
    if (tag == "D" + std::to_string(p - 1))
        return fp == reference_fingerprint(TypeTag::DihedralPminus1, p);
    if (tag == "D" + std::to_string(p + 1))
        return fp == reference_fingerprint(TypeTag::DihedralPplus1, p);
    return false;
}

} // namespace

namespace {

ReplayResult replay_with_group(const FailureCertificate& cert, const GroupTable& g) {
    auto fail = [](const std::string& check) { return ReplayResult{false, check}; };

    auto check_matrix = [&](const ProjMatrix& m) {
        if (m.a >= cert.p || m.b >= cert.p || m.c >= cert.p || m.d >= cert.p) return false;
        return det_mod(m, cert.p) == 1 && canonical(m, cert.p) == m;
    };
    for (const auto& member : cert.tuple) {
        if (member.generators.empty()) return fail("matrix");
        for (const auto& mat : member.generators)
            if (!check_matrix(mat)) return fail("matrix");
    }
    for (const auto& mat : cert.sequence)
        if (!check_matrix(mat)) return fail("matrix");
    if (!check_matrix(cert.witness)) return fail("matrix");

    // Tuple members: proper subgroups of the claimed isomorphism type.
    std::vector<ElementSet> members;
    for (const auto& member : cert.tuple) {
        std::vector<uint32_t> gens;
        for (const auto& mat : member.generators) gens.push_back(g.index_of(mat));
        bool exceeded = false;
        ElementSet set = g.closure_bounded(gens, g.order() / 2, &exceeded);
        if (exceeded) return fail("member_proper");
        if (!tag_matches(g, member.tag, set)) return fail("tag");
        members.push_back(std::move(set));
    }

    std::vector<uint32_t> seq;
    for (const auto& mat : cert.sequence) seq.push_back(g.index_of(mat));
    uint32_t witness = g.index_of(cert.witness);
    if (witness == GroupTable::identity()) return fail("witness_identity");
    for (uint32_t e : seq)
        if (e == GroupTable::identity()) return fail("sequence_identity");

    for (uint32_t i = 0; i < cert.m; ++i)
        for (uint32_t i2 = 0; i2 < cert.m; ++i2)
            if ((i == i2) == members[i2].test(seq[i])) return fail("correspondence");

    // General position directly on the member sets.
    for (uint32_t drop = 0; drop < cert.m; ++drop) {
        ElementSet others(g.order(), true);
        for (uint32_t t = 0; t < cert.m; ++t)
            if (t != drop) others.intersect_with(members[t]);
        if (others.subset_of(members[drop])) return fail("general_position");
    }

    ElementSet rad = members[0];
    for (uint32_t t = 1; t < cert.m; ++t) rad.intersect_with(members[t]);
    if (!rad.test(witness)) return fail("radical");
    if (rad.count() != cert.radical_size) return fail("radical_size");

    bool exceeded = false;
    g.closure_bounded(seq, g.order() / 2, &exceeded);
    if (!exceeded) return fail("generating");
    std::vector<uint32_t> rest;
    for (uint32_t i = 0; i < cert.m; ++i) {
        rest.clear();
        for (uint32_t t = 0; t < cert.m; ++t)
            if (t != i) rest.push_back(seq[t]);
        g.closure_bounded(rest, g.order() / 2, &exceeded);
        if (exceeded) return fail("irredundant");
    }

    for (uint32_t i = 0; i < cert.m; ++i) {
        std::vector<uint32_t> replaced = seq;
        replaced[i] = witness;
        ElementSet cl = g.closure_bounded(replaced, g.order() / 2, &exceeded);
        if (exceeded) return fail("replacement");
        if (cl.count() != cert.replay_sizes[i]) return fail("replay_sizes");
    }

    // Variant-specific structure (ties the variant label to the shape).
    uint32_t worder = g.element_order(witness);
    if (cert.variant == "order3") {
        if (worder != 3) return fail("variant_structure");
    } else if (cert.variant == "case1" || cert.variant == "case2") {
        if (worder != 2) return fail("variant_structure");
        const std::string want = cert.variant == "case1" ? "S4" : "A5";
        if (cert.tuple[0].tag != want || cert.tuple[2].tag != want)
            return fail("variant_structure");
        ElementSet mid = members[0];
        mid.intersect_with(members[2]);
        uint32_t want_order = cert.variant == "case1" ? 6u : 10u;
        if (mid.count() != want_order) return fail("variant_structure");
    }

    return ReplayResult{true, ""};
}

ReplayResult parse_and_precheck(const json& j, FailureCertificate& cert) {
    auto fail = [](const std::string& check) { return ReplayResult{false, check}; };
    try {
        if (j.at("schema_version").get<uint32_t>() != 1) return fail("schema_version");
        cert = certificate_from_json(j);
    } catch (const std::exception&) {
        return fail("parse");
    }
    if (!is_prime(cert.p) || cert.p <= 5) return fail("prime");
    if (cert.m != jambor_m(cert.p)) return fail("m_value");
    if (cert.sequence.size() != cert.m || cert.tuple.size() != cert.m) return fail("length");
    if (cert.replay_sizes.size() != cert.m) return fail("replay_length");
    std::vector<std::string> variants = applicable_variants(cert.p);
    variants.push_back("search");
    if (std::find(variants.begin(), variants.end(), cert.variant) == variants.end())
        return fail("variant");
    return ReplayResult{true, ""};
}

} // namespace

ReplayResult replay_certificate(const json& j, const AnalysisOptions& opts) {
    FailureCertificate cert;
    ReplayResult pre = parse_and_precheck(j, cert);
    if (!pre.ok) return pre;
    BuildOptions bopts;
    bopts.mul_table_threshold = opts.mul_table_threshold;
    GroupTable g = TableCache::build_cached(cert.p, bopts, opts.cache_dir);
    return replay_with_group(cert, g);
}

ReplayResult replay_certificate(const json& j, const GroupTable& g) {
    FailureCertificate cert;
    ReplayResult pre = parse_and_precheck(j, cert);
    if (!pre.ok) return pre;
    if (cert.p != g.p()) return ReplayResult{false, "prime"};
    return replay_with_group(cert, g);
}

} // namespace psl2rp
