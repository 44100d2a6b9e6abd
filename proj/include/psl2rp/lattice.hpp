#pragma once

#include <array>
#include <string>
#include <vector>

#include "psl2rp/subgroups.hpp"

namespace psl2rp {

// Full subgroup lattice of a small subgroup (|H| <= 60). Every subgroup of
// the groups this is used on (A4, S4, A5, small dihedral, Borel fragments)
// is generated by at most two elements, so closing over element pairs is
// exhaustive.
struct SubgroupLattice {
    std::vector<ElementSet> nodes; // canonical order; nodes[0] = trivial, last = H
    std::vector<IsoClass> iso;
    std::vector<std::vector<uint32_t>> subgroups_of; // j in subgroups_of[i] iff node j < node i
    std::vector<std::pair<uint32_t, uint32_t>> hasse; // covering pairs (lower, upper)

    uint32_t top() const { return static_cast<uint32_t>(nodes.size()) - 1; }
    bool contains(uint32_t lower, uint32_t upper) const;
};

SubgroupLattice all_subgroups_small(const GroupTable& g, const ElementSet& h,
                                    uint32_t max_order = 60);

// Chains 1 < A < B < top with A, B nontrivial proper: the "length-3 chains
// of nontrivial subgroups" of the middle-term arguments.
std::vector<std::array<uint32_t, 2>> chains_of_length3(const SubgroupLattice& lat);

std::string lattice_dot(const SubgroupLattice& lat, const std::string& title);

} // namespace psl2rp
