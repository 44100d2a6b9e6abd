#include "psl2rp/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace psl2rp {

using json = nlohmann::json;

namespace {

json matrix_json(const ProjMatrix& m) { return json::array({m.a, m.b, m.c, m.d}); }

} // namespace

json report_to_json(const RPReport& report, const GroupTable& g) {
    json witnesses = json::array();
    for (const auto& w : report.witnesses)
        witnesses.push_back({{"index", w.element},
                             {"order", w.order},
                             {"matrix", matrix_json(g.matrix_of(w.element))}});
    json certs = json::array();
    for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c));
    return json{{"schema_version", 1},
                {"p", report.p},
                {"verdict", verdict_name(report.verdict)},
                {"m", report.m},
                {"m_verified", report.m_verified},
                {"prediction", verdict_name(report.prediction)},
                {"agreement", report.agreement},
                {"oracle", report.from_oracle},
                {"witness_count", report.witnesses.size()},
                {"witnesses", witnesses},
                {"certificates", certs},
                {"stats",
                 {{"tuples_examined", report.stats.candidates},
                  {"general_position", report.stats.gp_tuples},
                  {"realizable", report.stats.realizable},
                  {"realize_calls", report.stats.realize_calls},
                  {"projected_work", report.projected_work}}}};
}

std::string report_to_text(const json& j) {
    std::ostringstream os;
    os << "p = " << j.at("p").get<uint32_t>() << ": RP " << j.at("verdict").get<std::string>()
       << " (predicted " << j.at("prediction").get<std::string>() << ", agreement "
       << (j.at("agreement").get<bool>() ? "yes" : "NO") << ")\n";
    os << "  m = " << j.at("m").get<uint32_t>()
       << (j.at("m_verified").get<bool>() ? " (verified)" : " (Jambor)") << "\n";
    const auto& stats = j.at("stats");
    os << "  tuples examined " << stats.at("tuples_examined").get<uint64_t>()
       << ", general position " << stats.at("general_position").get<uint64_t>() << ", realizable "
       << stats.at("realizable").get<uint64_t>() << "\n";
    std::map<uint32_t, uint32_t> by_order;
    for (const auto& w : j.at("witnesses")) by_order[w.at("order").get<uint32_t>()] += 1;
    os << "  witnesses: " << j.at("witness_count").get<uint64_t>();
    if (!by_order.empty()) {
        os << " (";
        bool first = true;
        for (auto& [ord, count] : by_order) {
            if (!first) os << ", ";
            os << count << " of order " << ord;
            first = false;
        }
        os << ")";
    }
    os << "\n";
    return os.str();
}

json census_to_json(const AnalysisContext& ctx) {
    const GroupTable& g = ctx.group;
    json classes = json::array();
    for (const auto& ci : ctx.maximals.classes()) {
        const MaximalSubgroup& rep = ctx.maximals[ci.rep_index];
        json gens = json::array();
        for (uint32_t e : rep.generators) gens.push_back(matrix_json(g.matrix_of(e)));
        classes.push_back({{"tag", type_label(ci.tag, ctx.p())},
                           {"order", rep.order},
                           {"class_size", ci.size},
                           {"generators", gens}});
    }
    json census = json::object();
    for (auto& [tag, count] : ctx.maximals.census())
        census[type_label(tag, ctx.p())] = count;
    return json{{"schema_version", 1},
                {"p", ctx.p()},
                {"group_order", g.order()},
                {"maximal_count", ctx.maximals.size()},
                {"census", census},
                {"classes", classes}};
}

std::string census_to_text(const json& j) {
    std::ostringstream os;
    os << "PSL(2," << j.at("p").get<uint32_t>() << "), order "
       << j.at("group_order").get<uint64_t>() << ": " << j.at("maximal_count").get<uint64_t>()
       << " maximal subgroups\n";
    for (auto& [tag, count] : j.at("census").items())
        os << "  " << tag << ": " << count.get<uint64_t>() << "\n";
    os << "conjugacy classes:\n";
    for (const auto& c : j.at("classes"))
        os << "  " << c.at("tag").get<std::string>() << " of order "
           << c.at("order").get<uint64_t>() << ", class size "
           << c.at("class_size").get<uint64_t>() << "\n";
    return os.str();
}

json table_to_json(const std::vector<TableRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row{{"p", r.p},
                 {"mod8", r.p % 8},
                 {"mod10", r.p % 10},
                 {"predicted", verdict_name(r.predicted)},
                 {"agreement", r.agreement}};
        row["verified"] = r.verified ? json(verdict_name(*r.verified)) : json(nullptr);
        out.push_back(row);
    }
    return json{{"schema_version", 1}, {"rows", out}};
}

std::string table_to_text(const json& j) {
    std::ostringstream os;
    os << "   p  mod8  mod10  predicted  verified   agree\n";
    for (const auto& r : j.at("rows")) {
        os.width(4);
        os << r.at("p").get<uint32_t>();
        os << "  ";
        os.width(4);
        os << r.at("mod8").get<uint32_t>();
        os << "  ";
        os.width(5);
        os << r.at("mod10").get<uint32_t>();
        os << "  ";
        os.width(9);
        os << r.at("predicted").get<std::string>();
        os << "  ";
        std::string v = r.at("verified").is_null() ? "-" : r.at("verified").get<std::string>();
        os.width(8);
        os << v;
        os << "  ";
        os << (r.at("agreement").get<bool>() ? "yes" : "NO") << "\n";
    }
    return os.str();
}

json witnesses_to_json(const RPReport& report, const GroupTable& g) {
    json j = report_to_json(report, g);
    json orders = json::object();
    for (const auto& w : report.witnesses) {
        std::string key = std::to_string(w.order);
        orders[key] = orders.value(key, uint64_t(0)) + 1;
    }
    return json{{"schema_version", 1},
                {"p", report.p},
                {"verdict", j.at("verdict")},
                {"witness_count", report.witnesses.size()},
                {"orders", orders},
                {"witnesses", j.at("witnesses")}};
}

std::string witnesses_to_text(const json& j) {
    std::ostringstream os;
    os << "p = " << j.at("p").get<uint32_t>() << ": RP " << j.at("verdict").get<std::string>()
       << ", " << j.at("witness_count").get<uint64_t>() << " witnesses to failure\n";
    for (auto& [ord, count] : j.at("orders").items())
        os << "  order " << ord << ": " << count.get<uint64_t>() << "\n";
    return os.str();
}

} // namespace psl2rp
