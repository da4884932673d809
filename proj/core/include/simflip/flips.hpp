#ifndef SIMFLIP_FLIPS_HPP
#define SIMFLIP_FLIPS_HPP

#include <optional>

#include "simflip/triangulation.hpp"

namespace simflip {

/// Set of edges to flip simultaneously. Kept sorted and duplicate-free.
using FlipSet = std::vector<Edge>;

FlipSet make_flipset(std::vector<Edge> edges);

/// An edge together with the two vertices seeing it and its incident faces.
struct EdgeView {
    Edge edge;
    Vertex seer_left;   // apex of face (u, v, seer_left)
    Vertex seer_right;  // apex of face (v, u, seer_right)
    Face face_left;
    Face face_right;

    std::pair<Vertex, Vertex> seers() const { return {seer_left, seer_right}; }
};

struct Violation {
    enum class Kind { Consecutive, BadPair, BlockedWithoutBlocker };
    Kind kind;
    Edge a;  // offending member of the set
    Edge b;  // partner edge / missing blocker
    std::string to_string() const;
};

struct FlipCheck {
    bool ok = true;
    std::vector<Violation> violations;
};

/// One flip: `removed` was replaced by `inserted` (the edge between its seers).
struct FlipQuad {
    Edge removed;
    Edge inserted;
    bool operator==(const FlipQuad&) const = default;
};

/// Record of one simultaneous flip, sufficient to invert it.
struct FlipRecord {
    std::vector<FlipQuad> quads;
    uint64_t host_hash = 0;    // labelled hash of the triangulation flipped
    uint64_t result_hash = 0;  // labelled hash of the result
    Face host_outerface;       // restored by apply_inverse

    size_t size() const { return quads.size(); }
};

EdgeView edge_view(const Triangulation& t, const Edge& e);
EdgeView edge_view(const EmbeddingIndex& idx, const Edge& e);

/// An edge is individually flippable iff its seers are not adjacent.
bool is_individually_flippable(const Triangulation& t, const Edge& e);
bool is_individually_flippable(const EmbeddingIndex& idx, const Edge& e);

/// The edge joining the seers when the flip is blocked.
std::optional<Edge> blocking_edge(const Triangulation& t, const Edge& e);
std::optional<Edge> blocking_edge(const EmbeddingIndex& idx, const Edge& e);

/// All edges seen by exactly the same pair of vertices as e.
std::vector<Edge> bad_pair_partner(const Triangulation& t, const Edge& e);
std::vector<Edge> bad_pair_partner(const EmbeddingIndex& idx, const Edge& e);

/// Characterisation of flippable sets: ok iff
///   (1) no two members share a face,
///   (2) no two members are seen by the same vertex pair, and
///   (3) every blocked member has its blocking edge in the set.
/// Reports every violation, not just the first.
FlipCheck check_flipset(const Triangulation& t, const FlipSet& s);
FlipCheck check_flipset(const EmbeddingIndex& idx, const FlipSet& s);

/// Applies a checked flip set; refuses sets that fail check_flipset.
/// The result is validated; if the old outerface was flipped away, the
/// first face of the new embedding takes its place.
std::pair<Triangulation, FlipRecord> apply_flipset(const Triangulation& t, const FlipSet& s);

/// Independent oracle: performs the edge replacements literally on the rotation
/// system without any precondition, then validates the result. Agrees with
/// check_flipset on every input.
bool brute_force_check(const Triangulation& t, const FlipSet& s);

/// The flip set that undoes `record` on the result triangulation.
FlipSet invert(const FlipRecord& record);

/// Applies invert(record) to `result` and checks the labelled round trip.
Triangulation apply_inverse(const Triangulation& result, const FlipRecord& record);

}  // namespace simflip

#endif
