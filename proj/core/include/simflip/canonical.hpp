#ifndef SIMFLIP_CANONICAL_HPP
#define SIMFLIP_CANONICAL_HPP

#include <optional>

#include "simflip/triangulation.hpp"

namespace simflip {

/// Embedding equivalence. Oriented is the default; Reflect additionally admits
/// the mirror image (all rotations reversed).
enum class IsoMode { Oriented, Reflect };

/// Canonical byte encoding of the embedded graph. Two triangulations get equal
/// codes iff they are embedding-isomorphic under the chosen mode. Computed as
/// the lexicographic minimum over all rooted directed edges of a breadth-first
/// relabelling of the rotation system.
struct CanonicalCode {
    std::vector<uint8_t> bytes;
    bool operator==(const CanonicalCode&) const = default;
    auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const Triangulation& t, IsoMode mode = IsoMode::Oriented);

struct Isomorphism {
    std::vector<Vertex> map;  // vertex of t1 -> vertex of t2
    bool orientation_preserving = true;
};

/// Embedding-preserving isomorphism between t1 and t2, if one exists.
/// The returned mapping sends rotations of t1 to rotations of t2 (reversed
/// rotations when orientation_preserving is false, which only happens in
/// Reflect mode).
std::optional<Isomorphism> is_isomorphic(const Triangulation& t1, const Triangulation& t2,
                                         IsoMode mode = IsoMode::Oriented);

/// Checks that `map` really is an embedding isomorphism t1 -> t2.
bool check_isomorphism(const Triangulation& t1, const Triangulation& t2,
                       const std::vector<Vertex>& map, bool orientation_preserving);

}  // namespace simflip

#endif
