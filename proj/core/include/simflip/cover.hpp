#ifndef SIMFLIP_COVER_HPP
#define SIMFLIP_COVER_HPP

#include <optional>

#include "simflip/flips.hpp"
#include "simflip/separating.hpp"

namespace simflip {

/// Edge set with exactly one member on every face (a perfect matching of the
/// dual); contains `forced` when given. Always has n-2 edges.
FlipSet face_set(const Triangulation& t, std::optional<Edge> forced = std::nullopt);

/// Edge set with exactly one member in every triangle, faces and separating
/// triangles alike. Solves each separating region by a forced dual matching,
/// peeling the containment order innermost first.
FlipSet triangle_set(const Triangulation& t, const ContainmentOrder& order,
                     std::optional<Edge> forced = std::nullopt);
FlipSet triangle_set(const Triangulation& t, std::optional<Edge> forced = std::nullopt);

/// One simultaneous flip into a 4-connected triangulation (n >= 6): flips the
/// triangle-cover edges that lie in separating triangles. Returns the set and
/// the result; the set is empty when the input is already 4-connected.
std::pair<FlipSet, Triangulation> four_connectify(const Triangulation& t);

/// Edge 3-colouring in which every triangle (face or separating) is
/// trichromatic, derived from a proper vertex 4-colouring by pairing colour
/// classes.
struct TaitColoring {
    std::array<std::vector<Edge>, 3> classes;
    std::unordered_map<Edge, int, EdgeHash> class_of;
};

TaitColoring tait_coloring(const Triangulation& t);

/// Three pairwise disjoint flippable sets, each of which 4-connectifies (n>=6).
std::array<FlipSet, 3> three_disjoint_flips(const Triangulation& t);

}  // namespace simflip

#endif
