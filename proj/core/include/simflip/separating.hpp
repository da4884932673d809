#ifndef SIMFLIP_SEPARATING_HPP
#define SIMFLIP_SEPARATING_HPP

#include "simflip/triangulation.hpp"

namespace simflip {

/// Canonical vertex ordering (v1=a, v2=b, ..., vn=c) for outerface (a,b,c):
/// every prefix graph is 2-connected and each vertex attaches to a contiguous
/// contour interval of the previous prefix.
struct CanonicalOrdering {
    std::vector<Vertex> order;     // order[i] = v_{i+1}
    std::vector<int> index;        // vertex -> position (0-based)
    // Contour interval each vertex attached to, in contour order, recorded
    // when the vertex was placed. Entries for v1, v2 are empty.
    std::vector<std::vector<Vertex>> attachment;
};

CanonicalOrdering canonical_ordering(const Triangulation& t);

/// Replays the insertion sequence and checks both canonical conditions.
bool verify_canonical_ordering(const Triangulation& t, const CanonicalOrdering& ord,
                               std::string* why = nullptr);

/// A 3-cycle that is not a face. `level` is the largest canonical index of its
/// vertices; icom/ocom are the vertex sets inside and outside (sorted).
struct SeparatingTriangle {
    Triple tri;
    int level = -1;
    std::vector<Vertex> icom;
    std::vector<Vertex> ocom;
};

/// All separating triangles (with components); pass an ordering to fill levels.
std::vector<SeparatingTriangle> separating_triangles(const Triangulation& t);
std::vector<SeparatingTriangle> separating_triangles(const Triangulation& t,
                                                     const CanonicalOrdering& ord);

bool has_separating_triangle(const Triangulation& t);

/// Triangulations are 4-connected exactly when no triangle separates (n >= 6).
inline bool is_four_connected(const Triangulation& t) {
    return t.size() >= 6 && !has_separating_triangle(t);
}

/// Linear extension of the containment order (icom-subset order), innermost
/// triangles first. Equal-level triangles are ordered by their contour
/// intervals; other ties are laminar-disjoint and may come in any order.
struct ContainmentOrder {
    std::vector<SeparatingTriangle> triangles;  // innermost first
};

ContainmentOrder containment_order(const Triangulation& t);

/// Longest chain length in the containment order (0 when no triangle separates).
int max_nesting_depth(const ContainmentOrder& order);

}  // namespace simflip

#endif
