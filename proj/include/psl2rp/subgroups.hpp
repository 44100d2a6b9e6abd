#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psl2rp/element_set.hpp"
#include "psl2rp/group.hpp"

namespace psl2rp {

// Dickson's list of possible maximal subgroup types of PSL(2,p). Borel is
// the point stabilizer Z_p : Z_{(p-1)/2}.
enum class TypeTag { Borel, DihedralPminus1, DihedralPplus1, A4, S4, A5, Other };

std::string type_label(TypeTag tag, uint32_t p);

// Cheap isomorphism-type discriminator: separates everything on the Dickson
// list (verified against abstract models at enumeration time).
struct Fingerprint {
    uint32_t order = 0;
    std::map<uint32_t, uint32_t> order_multiset; // element order -> count
    bool abelian = false;
    uint32_t center_size = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint_of(const GroupTable& g, const ElementSet& h);
Fingerprint fingerprint_of(const GroupTable& g, std::span<const uint32_t> members);
// Abstract model of the given type at this p (permutation models for
// A4/S4/A5, algebraic models for dihedral and Borel).
Fingerprint reference_fingerprint(TypeTag tag, uint32_t p);

TypeTag classify(const GroupTable& g, const ElementSet& h);

// Small isomorphism classes used by the counting lemmas and diagrams.
struct IsoClass {
    enum class Kind { Trivial, Cyclic, Klein, Dihedral, A4, S4, A5, Borel, Other };
    Kind kind = Kind::Other;
    uint32_t order = 0;

    friend bool operator==(const IsoClass&, const IsoClass&) = default;
    friend auto operator<=>(const IsoClass&, const IsoClass&) = default;
    std::string label() const; // "Z2", "Z2xZ2", "S3", "D10", "A5", ...
};

IsoClass small_iso(const GroupTable& g, std::span<const uint32_t> members);
IsoClass small_iso(const GroupTable& g, const ElementSet& h);

struct MaximalSubgroup {
    ElementSet set;
    TypeTag tag = TypeTag::Other;
    uint32_t class_id = 0;
    std::vector<uint32_t> generators; // <= 3 indices, closure == set
    uint32_t order = 0;
};

struct SubgroupClassInfo {
    TypeTag tag = TypeTag::Other;
    uint32_t size = 0;      // number of conjugates
    uint32_t rep_index = 0; // index into the catalog of the lowest member
};

struct EnumerationOptions {
    uint32_t full_check_threshold = 5000; // exhaustive maximality below this order
    uint32_t maximality_samples = 64;     // seeded samples above it
    uint64_t seed = 0x5eed;
    unsigned threads = 0;
};

// The complete maximal-subgroup catalog, canonically ordered (membership-
// lexicographic). Completeness is certified, not assumed: every nonidentity
// element lies in a listed subgroup, every candidate class survived an
// explicit maximality verification, and counts match the closed forms.
class MaximalCatalog {
public:
    const std::vector<MaximalSubgroup>& items() const { return items_; }
    const MaximalSubgroup& operator[](uint32_t i) const { return items_[i]; }
    uint32_t size() const { return static_cast<uint32_t>(items_.size()); }

    const std::vector<SubgroupClassInfo>& classes() const { return classes_; }
    std::map<TypeTag, uint32_t> census() const;

    // Bitset over catalog indices of the maximal subgroups containing g.
    uint32_t words() const { return words_; }
    std::span<const uint64_t> containing(uint32_t g) const {
        return {membership_.data() + uint64_t(g) * words_, words_};
    }
    std::vector<uint32_t> containing_indices(uint32_t g) const;

    friend MaximalCatalog enumerate_maximal_subgroups(const GroupTable&,
                                                      const EnumerationOptions&);

private:
    std::vector<MaximalSubgroup> items_;
    std::vector<SubgroupClassInfo> classes_;
    std::vector<uint64_t> membership_;
    uint32_t words_ = 0;
};

MaximalCatalog enumerate_maximal_subgroups(const GroupTable& g,
                                           const EnumerationOptions& opts = {});

// Standard normalizer/centralizer as ElementSets (full scans).
ElementSet normalizer(const GroupTable& g, const ElementSet& h,
                      std::span<const uint32_t> gens = {});
ElementSet centralizer(const GroupTable& g, uint32_t x);

// Intersection of all maximal subgroups; trivial for PSL(2,p).
ElementSet frattini(const GroupTable& g, const MaximalCatalog& maximals);

// Extract a generating list of at most `limit` elements for a subgroup.
std::vector<uint32_t> small_generators(const GroupTable& g, const ElementSet& h,
                                       uint32_t limit = 3);

// Counting over ALL subgroups of the named small types (S3, D10, S4, A5):
// one representative per conjugacy class from an exhaustive two-generator
// sweep, conjugate-saturated; count per class certified both by orbit size
// and by |G| / |normalizer|.
struct TypeCount {
    IsoClass iso;
    uint64_t count = 0;
    uint32_t class_count = 0;
};
std::vector<TypeCount> count_by_type(const GroupTable& g);

// Two distinct maximal subgroups of the given tag whose intersection has
// the requested isomorphism type; throws if none exists (would falsify the
// counting lemma) or if the tag is unavailable at this p.
struct IntersectingPair {
    uint32_t first, second;
    ElementSet intersection;
};
IntersectingPair find_intersecting_pair(const GroupTable& g, const MaximalCatalog& maximals,
                                        TypeTag tag, const IsoClass& target);

} // namespace psl2rp
