#ifndef SIMFLIP_OUTERPLANE_HPP
#define SIMFLIP_OUTERPLANE_HPP

#include <optional>

#include "simflip/flips.hpp"
#include "simflip/triangulation.hpp"

namespace simflip {

/// Maximal outerplane graph: a cycle (in boundary order) triangulated by
/// non-crossing internal chords. Vertex ids are arbitrary distinct ints so
/// sub-graphs can keep their original labels; files use 0..n-1.
struct OuterplaneGraph {
    std::vector<Vertex> boundary;
    std::vector<Edge> chords;

    int size() const { return int(boundary.size()); }
    int position_of(Vertex v) const;  // index in boundary, -1 if absent
    bool is_boundary_edge(const Edge& e) const;
    bool has_chord(const Edge& e) const;

    bool operator==(const OuterplaneGraph&) const = default;
};

ValidationReport validate_outer(const OuterplaneGraph& o);

/// Internal faces (n-2 triangles) and the dual tree over them.
struct DualTree {
    std::vector<Triple> faces;
    std::vector<std::vector<int>> adj;
    std::unordered_map<Edge, std::pair<int, int>, EdgeHash> chord_faces;

    int node_count() const { return int(faces.size()); }
    int max_degree() const;
    int diameter() const;
    std::vector<int> distances_from(const std::vector<int>& sources) const;
};

DualTree dual_tree(const OuterplaneGraph& o);

struct OuterFlipCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Flippable iff the chords' dual edges form a matching (no two in one face).
/// Boundary edges are rejected outright.
OuterFlipCheck check_outer_flipset(const OuterplaneGraph& o, const FlipSet& s);

struct OuterFlipRecord {
    std::vector<FlipQuad> quads;
};

std::pair<OuterplaneGraph, OuterFlipRecord> apply_outer_flipset(const OuterplaneGraph& o,
                                                                const FlipSet& s);

using OuterSequence = std::vector<OuterFlipRecord>;

/// Flippable set of at least (n-3)/3 chords: the largest class of a proper
/// 3-edge-colouring of the dual tree.
FlipSet max_outer_flip(const OuterplaneGraph& o);

/// Family on which (n-3)/3 is tight: the dual tree has every non-leaf of
/// degree three and every leaf at odd depth; its maximum matching is exactly
/// one third of its edges. `depth` must be odd.
OuterplaneGraph tight_tree_family(int depth);

/// Independent set of vertices with boundary degree in [2,4] and |I| >= n/6,
/// found exactly by dynamic programming over the dual tree.
struct LowDegreeIndependentSet {
    std::vector<Vertex> members;
    std::array<std::vector<Vertex>, 3> by_degree;  // degree 2, 3, 4
};

LowDegreeIndependentSet low_degree_independent_set(const OuterplaneGraph& o);

/// log2-based bound constant 2/log2(6/5), about 7.6.
double outerplane_c1();

/// Flips the graph until its dual tree has diameter <= c1*log2(n), using at
/// most c1*log2(n) simultaneous flips (two per shrink round).
std::pair<OuterSequence, OuterplaneGraph> reduce_diameter(const OuterplaneGraph& o);

/// Makes v dominant with at most diameter(dual tree) flips, each flipping
/// exactly the internal edges seen by v.
std::pair<OuterSequence, OuterplaneGraph> make_dominant(const OuterplaneGraph& o, Vertex v);

/// reduce_diameter followed by make_dominant on a vertex chosen to minimise
/// the eccentricity of its face path. Returns the dominant vertex too.
struct DominantResult {
    OuterSequence steps;
    OuterplaneGraph graph;
    Vertex dominant;
};
DominantResult make_outerplane_dominant(const OuterplaneGraph& o);

/// Boundary-preserving isomorphism test (rotation, optionally reflection).
bool outer_isomorphic(const OuterplaneGraph& a, const OuterplaneGraph& b,
                      bool allow_reflection = true);

/// Morph o1 into (a relabelling of) o2 with at most 4*c1*log2(n) simultaneous
/// flips, meeting at the fan and replaying the second half backwards.
std::pair<OuterSequence, OuterplaneGraph> outer_morph(const OuterplaneGraph& o1,
                                                      const OuterplaneGraph& o2);

/// Fan: vertex 0 adjacent to the whole boundary path 1..n-1.
OuterplaneGraph fan(int n);
/// Snake triangulation: chords zigzag between the two ends of the polygon.
OuterplaneGraph zigzag(int n);
OuterplaneGraph random_outerplane(int n, uint64_t seed);

/// Every triangulated polygon on n vertices (boundary fixed as 0..n-1).
std::vector<OuterplaneGraph> all_polygon_triangulations(int n);

/// `.outer` format: `n <count>`, a boundary line, one `u v` line per chord.
OuterplaneGraph parse_outer(std::istream& in);
OuterplaneGraph parse_outer_string(const std::string& text);
OuterplaneGraph load_outer(const std::string& path);
std::string serialize_outer(const OuterplaneGraph& o);
void save_outer(const OuterplaneGraph& o, const std::string& path);

/// Embeds an outerplane graph (ids 0..n-1) in a triangulation by adding one
/// apex vertex n adjacent to the whole boundary.
Triangulation apex_triangulation(const OuterplaneGraph& o);

}  // namespace simflip

#endif
