#include "psl2rp/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace psl2rp {

bool SubgroupLattice::contains(uint32_t lower, uint32_t upper) const {
    const auto& subs = subgroups_of[upper];
    return std::find(subs.begin(), subs.end(), lower) != subs.end();
}

SubgroupLattice all_subgroups_small(const GroupTable& g, const ElementSet& h,
                                    uint32_t max_order) {
    uint32_t size = h.count();
    if (size > max_order)
        throw std::invalid_argument("all_subgroups_small: |H| = " + std::to_string(size) +
                                    " exceeds the limit " + std::to_string(max_order));
    std::vector<uint32_t> members = h.indices();
    if (members.empty() || members[0] != GroupTable::identity())
        throw std::invalid_argument("all_subgroups_small: not a subgroup");

    std::vector<ElementSet> nodes;
    auto add = [&](const ElementSet& s) {
        for (const ElementSet& n : nodes)
            if (n == s) return;
        nodes.push_back(s);
    };

    ElementSet trivial(g.order());
    trivial.insert(GroupTable::identity());
    add(trivial);
    std::array<uint32_t, 2> gens{};
    for (size_t i = 1; i < members.size(); ++i) {
        gens[0] = members[i];
        add(g.closure(std::span<const uint32_t>(gens.data(), 1)));
        for (size_t j = i + 1; j < members.size(); ++j) {
            gens[1] = members[j];
            add(g.closure(gens));
        }
    }
    add(h);

    std::sort(nodes.begin(), nodes.end(), [](const ElementSet& a, const ElementSet& b) {
        uint32_t ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return ElementSet::compare(a, b) < 0;
    });

    SubgroupLattice lat;
    lat.nodes = std::move(nodes);
    for (const ElementSet& n : lat.nodes) lat.iso.push_back(small_iso(g, n));
    lat.subgroups_of.resize(lat.nodes.size());
    for (uint32_t i = 0; i < lat.nodes.size(); ++i)
        for (uint32_t j = 0; j < lat.nodes.size(); ++j)
            if (i != j && lat.nodes[j].count() < lat.nodes[i].count() &&
                lat.nodes[j].subset_of(lat.nodes[i]))
                lat.subgroups_of[i].push_back(j);

    for (uint32_t upper = 0; upper < lat.nodes.size(); ++upper)
        for (uint32_t lower : lat.subgroups_of[upper]) {
            bool covering = true;
            for (uint32_t mid : lat.subgroups_of[upper]) {
                if (mid == lower) continue;
                if (lat.contains(lower, mid)) {
                    covering = false;
                    break;
                }
            }
            if (covering) lat.hasse.emplace_back(lower, upper);
        }
    std::sort(lat.hasse.begin(), lat.hasse.end());
    return lat;
}

std::vector<std::array<uint32_t, 2>> chains_of_length3(const SubgroupLattice& lat) {
    std::vector<std::array<uint32_t, 2>> out;
    uint32_t top = lat.top();
    for (uint32_t b : lat.subgroups_of[top]) {
        if (lat.nodes[b].count() == 1) continue;
        for (uint32_t a : lat.subgroups_of[b]) {
            if (lat.nodes[a].count() == 1) continue;
            out.push_back({a, b});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string lattice_dot(const SubgroupLattice& lat, const std::string& title) {
    std::ostringstream os;
    os << "// schema_version 1\n";
    os << "graph lattice {\n";
    os << "  label=\"" << title << "\";\n";
    os << "  rankdir=BT;\n";
    for (uint32_t i = 0; i < lat.nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << lat.iso[i].label() << " (" << lat.nodes[i].count()
           << ")\"];\n";
    for (auto [lo, hi] : lat.hasse) os << "  n" << lo << " -- n" << hi << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace psl2rp
