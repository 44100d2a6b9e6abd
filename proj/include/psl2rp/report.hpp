#pragma once

#include <nlohmann/json_fwd.hpp>

#include "psl2rp/rp.hpp"

namespace psl2rp {

// JSON is the canonical machine format; the text renderings below are
// derived from the JSON objects so the two cannot diverge.

nlohmann::json report_to_json(const RPReport& report, const GroupTable& g);
std::string report_to_text(const nlohmann::json& j);

nlohmann::json census_to_json(const AnalysisContext& ctx);
std::string census_to_text(const nlohmann::json& j);

struct TableRow {
    uint32_t p = 0;
    Verdict predicted = Verdict::Unresolved;
    std::optional<Verdict> verified;
    bool agreement = true;
};
nlohmann::json table_to_json(const std::vector<TableRow>& rows);
std::string table_to_text(const nlohmann::json& j);

nlohmann::json witnesses_to_json(const RPReport& report, const GroupTable& g);
std::string witnesses_to_text(const nlohmann::json& j);

} // namespace psl2rp
