#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "psl2rp/rp.hpp"

using namespace psl2rp;
using nlohmann::json;

namespace {

const AnalysisContext& ctx17() {
    static AnalysisContext ctx = AnalysisContext::create(17, {});
    return ctx;
}

// One random single-field mutation of a certificate JSON.
json mutate(const json& base, std::mt19937_64& rng) {
    json j = base;
    uint32_t p = j["p"].get<uint32_t>();
    auto bump = [&](json& v) { v = (v.get<uint64_t>() + 1 + rng() % 3) % std::max(2u * p, 7u); };
    switch (rng() % 10) {
    case 0: bump(j["p"]); break;
    case 1: bump(j["m"]); break;
    case 2: bump(j["radical_size"]); break;
    case 3: bump(j["schema_version"]); break;
    case 4: j["variant"] = (j["variant"] == "case1") ? "order3" : "case1"; break;
    case 5: {
        auto& seq = j["sequence"];
        bump(seq[rng() % seq.size()][rng() % 4]);
        break;
    }
    case 6: bump(j["witness"][rng() % 4]); break;
    case 7: {
        auto& replay = j["replay"];
        bump(replay[rng() % replay.size()]);
        break;
    }
    case 8: {
        auto& tuple = j["tuple"];
        auto& member = tuple[rng() % tuple.size()];
        auto& gens = member["generators"];
        bump(gens[rng() % gens.size()][rng() % 4]);
        break;
    }
    default: {
        auto& tuple = j["tuple"];
        auto& member = tuple[rng() % tuple.size()];
        std::string tag = member["tag"].get<std::string>();
        member["tag"] = (tag == "S4") ? "A5" : "S4";
        break;
    }
    }
    return j;
}

} // namespace

TEST_CASE("case1 certificate structure at p=17") {
    FailureCertificate cert = construct_failure_certificate(ctx17(), "case1");
    const GroupTable& g = ctx17().group;

    CHECK(cert.p == 17);
    CHECK(cert.m == 3);
    CHECK(cert.radical_size == 2); // radical is exactly <w> = Z2
    CHECK(g.element_order(g.index_of(cert.witness)) == 2);
    CHECK(cert.tuple[0].tag == "S4");
    CHECK(cert.tuple[1].tag == "D16"); // centralizer of w at p = +1 mod 8
    CHECK(cert.tuple[2].tag == "S4");
    CHECK(g.element_order(g.index_of(cert.sequence[1])) == 3); // g2 has order 3

    // <g1, g2> regenerates M3 exactly.
    std::vector<uint32_t> pair{g.index_of(cert.sequence[0]), g.index_of(cert.sequence[1])};
    ElementSet m3(g.order());
    {
        std::vector<uint32_t> gens;
        for (const auto& mat : cert.tuple[2].generators) gens.push_back(g.index_of(mat));
        m3 = g.closure(gens);
    }
    CHECK(g.closure(pair) == m3);
    CHECK(!m3.test(g.index_of(cert.sequence[2]))); // g3 outside M3

    // Diagram carries the expected labels.
    auto has_node = [&](const std::string& label) {
        for (const auto& n : cert.diagram.nodes)
            if (n.label.find(label) != std::string::npos) return true;
        return false;
    };
    CHECK(has_node("M1 = S4"));
    CHECK(has_node("M1^M3 = S3"));
    CHECK(has_node("<w> = Z2"));
    CHECK(has_node("<g2> = Z3"));
}

TEST_CASE("certificate json round trip") {
    FailureCertificate cert = construct_failure_certificate(ctx17(), "case1");
    json j = certificate_to_json(cert);
    FailureCertificate back = certificate_from_json(j);
    CHECK(back.p == cert.p);
    CHECK(back.variant == cert.variant);
    CHECK(back.sequence == cert.sequence);
    CHECK(back.witness == cert.witness);
    CHECK(back.replay_sizes == cert.replay_sizes);
    CHECK(certificate_to_json(back) == j);
}

TEST_CASE("replay accepts the genuine certificate and rejects mutations") {
    FailureCertificate cert = construct_failure_certificate(ctx17(), "case1");
    json j = certificate_to_json(cert);
    CHECK(replay_certificate(j).ok);

    std::mt19937_64 rng(2024);
    int rejected = 0;
    for (int t = 0; t < 120; ++t) {
        json bad = mutate(j, rng);
        if (bad == j) continue;
        ReplayResult res = replay_certificate(bad);
        if (!res.ok) ++rejected;
        CHECK(!res.ok);
        CHECK(!res.failed_check.empty());
    }
    CHECK(rejected >= 100);
}

TEST_CASE("variants are gated by the congruences") {
    CHECK(applicable_variants(17) == std::vector<std::string>{"case1"});
    CHECK(applicable_variants(23) == std::vector<std::string>{"case1"});
    CHECK(applicable_variants(29) == std::vector<std::string>{"case2", "order3"});
    CHECK(applicable_variants(41) ==
          std::vector<std::string>{"case1", "case2", "order3"});
    CHECK(applicable_variants(13).empty());
    CHECK(applicable_variants(11).empty()); // holds (exceptional), no certificates

    CHECK_THROWS_AS(construct_failure_certificate(ctx17(), "case2"), std::invalid_argument);
    AnalysisContext ctx13 = AnalysisContext::create(13, {});
    CHECK_THROWS_AS(construct_failure_certificate(ctx13, "case1"), std::invalid_argument);
}

TEST_CASE("order-3 triple configuration exists at the exceptional prime 11") {
    // At p=11 RP holds and m=4, so this is a structure check only: the
    // order-3 triple configuration, never a W(G) witness at m = 4.
    AnalysisContext ctx = AnalysisContext::create(11, {});
    Order3Structure s = build_order3_configuration(ctx);
    const GroupTable& g = ctx.group;
    CHECK(g.element_order(s.witness) == 3);
    CHECK(ctx.maximals[s.members[1]].tag == TypeTag::A5);
    CHECK(ctx.maximals[s.members[2]].tag == TypeTag::A5);
    TypeTag t1 = ctx.maximals[s.members[0]].tag;
    CHECK((t1 == TypeTag::DihedralPminus1 || t1 == TypeTag::DihedralPplus1));
    ElementSet rad = tuple_radical(ctx, s.members);
    CHECK(rad.count() == 3);
    CHECK(rad.test(s.witness));
    CHECK(is_generating(g, s.sequence));
    CHECK(is_irredundant(g, s.sequence));
}
