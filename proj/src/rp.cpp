#include "psl2rp/rp.hpp"

#include <algorithm>
#include <unordered_map>

namespace psl2rp {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unresolved: return "unresolved";
    }
    return "unresolved";
}

Verdict predict_rp(uint32_t p) {
    Prime check(p);
    if (p == 7 || p == 11 || p == 19 || p == 31) return Verdict::Holds;
    bool mod8 = (p % 8 == 3 || p % 8 == 5);
    bool mod10 = (p % 10 == 3 || p % 10 == 7);
    return (mod8 && mod10) ? Verdict::Holds : Verdict::Fails;
}

std::vector<uint32_t> predict_witness_orders(uint32_t p) {
    if (predict_rp(p) == Verdict::Holds) return {};
    if (p % 10 == 1 || p % 10 == 9) return {2, 3};
    return {2};
}

RPReport check_rp(const AnalysisContext& ctx, uint32_t m, bool m_verified) {
    RPReport report;
    report.p = ctx.p();
    report.m = m;
    report.m_verified = m_verified;
    report.prediction = predict_rp(ctx.p());

    GpScanResult scan = scan_gp_radical_tuples(ctx, m, /*collect_realized=*/true);
    report.stats = scan.stats;
    report.projected_work = scan.projected_work;
    if (!scan.resolved) {
        report.verdict = Verdict::Unresolved;
        report.agreement = false;
        return report;
    }

    // W(G) = union of radicals (minus identity) over realizable tuples;
    // keep the first (canonical) realized tuple as each witness's evidence.
    std::map<uint32_t, const RealizedTuple*> evidence;
    for (const RealizedTuple& rt : scan.realized)
        for (uint32_t e : rt.radical)
            if (e != GroupTable::identity() && !evidence.count(e)) evidence[e] = &rt;

    report.verdict = evidence.empty() ? Verdict::Holds : Verdict::Fails;
    report.agreement = (report.verdict == report.prediction);

    // Definitional replay of every witness: the carried sequence must be an
    // irredundant generating sequence and the witness must fail all m
    // replacements by closure.
    const GroupTable& g = ctx.group;
    std::unordered_map<const RealizedTuple*, bool> seq_ok;
    for (auto& [e, rt] : evidence) {
        auto it = seq_ok.find(rt);
        if (it == seq_ok.end()) {
            bool ok = is_generating(g, rt->sequence) && is_irredundant(g, rt->sequence);
            seq_ok.emplace(rt, ok);
            if (!ok) throw std::logic_error("realized sequence failed definitional re-check");
        }
        if (!tuple_radical(ctx, rt->members).test(e))
            throw std::logic_error("witness left the radical of its evidence tuple");
        std::vector<uint32_t> replaced = rt->sequence.elems;
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t keep = replaced[i];
            replaced[i] = e;
            bool exceeded = false;
            g.closure_bounded(replaced, g.order() / 2, &exceeded);
            replaced[i] = keep;
            if (exceeded)
                throw std::logic_error("witness replay failed: a replacement regenerates G");
        }
        report.witnesses.push_back({e, g.element_order(e)});
    }

    // One certificate per witness conjugacy class, lowest witness first.
    std::map<uint32_t, uint32_t> class_pick; // class id -> witness element
    for (const auto& w : report.witnesses)
        if (!class_pick.count(g.class_of(w.element))) class_pick[g.class_of(w.element)] = w.element;
    for (auto& [cls, e] : class_pick) {
        const RealizedTuple* rt = evidence[e];
        report.certificates.push_back(
            certificate_from_parts(ctx, rt->members, rt->sequence, e, "search"));
    }
    return report;
}

} // namespace psl2rp
