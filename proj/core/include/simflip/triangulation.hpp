#ifndef SIMFLIP_TRIANGULATION_HPP
#define SIMFLIP_TRIANGULATION_HPP

#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "simflip/types.hpp"

namespace simflip {

/// Plane triangulation given as a rotation system: for each vertex the
/// counterclockwise cyclic order of its neighbours, plus a designated outerface.
/// The face to the left of the directed edge u->v is (u, v, next(u,v)) where
/// next(u,v) is the successor of v in the rotation at u.
class Triangulation {
public:
    Triangulation() = default;
    /// Rotation lists are cyclic; each is stored rotated so its smallest
    /// neighbour comes first, making value equality mean labelled-embedding
    /// equality.
    Triangulation(std::vector<std::vector<Vertex>> rotation, Face outerface)
        : rot_(std::move(rotation)), outer_(outerface) {
        normalize();
    }

    int size() const { return int(rot_.size()); }
    int edge_count() const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return rot_[v]; }
    const std::vector<std::vector<Vertex>>& rotation() const { return rot_; }
    const Face& outerface() const { return outer_; }
    int degree(Vertex v) const { return int(rot_[v].size()); }

    bool adjacent(Vertex u, Vertex v) const;
    std::vector<Edge> edges() const;

    /// Same rotation system with a different face designated as outer.
    Triangulation with_outerface(const Face& f) const;
    /// Mirror image: all rotations reversed.
    Triangulation reflected() const;

    bool operator==(const Triangulation&) const = default;

private:
    void normalize();

    std::vector<std::vector<Vertex>> rot_;
    Face outer_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
};

/// Checks every triangulation invariant: simplicity, symmetry, connectivity,
/// 3n-6 edges, 2n-4 triangular faces from the rotation system, outerface is a face.
ValidationReport validate(const Triangulation& t);

inline bool is_valid(const Triangulation& t) { return validate(t).ok; }

/// Precomputed face structure and O(1) directed-edge lookups for one triangulation.
class EmbeddingIndex {
public:
    explicit EmbeddingIndex(const Triangulation& t);

    const Triangulation& graph() const { return *t_; }
    const std::vector<Face>& faces() const { return faces_; }
    int face_count() const { return int(faces_.size()); }

    /// Successor of v in the ccw rotation at u. u and v must be adjacent.
    Vertex next_ccw(Vertex u, Vertex v) const;
    Vertex prev_ccw(Vertex u, Vertex v) const;
    /// Third vertex of the face to the left of u->v.
    Vertex third(Vertex u, Vertex v) const { return next_ccw(u, v); }

    /// The two vertices seeing edge e, i.e. the apexes of its incident faces.
    std::pair<Vertex, Vertex> seers(const Edge& e) const;
    /// Face ids incident to e.
    std::pair<int, int> incident_faces(const Edge& e) const;
    /// Face id to the left of the directed edge u->v.
    int face_left_of(Vertex u, Vertex v) const;

    bool adjacent(Vertex u, Vertex v) const { return pos_.count(key(u, v)) != 0; }
    int face_index_of(const Face& f) const;  // -1 when (a,b,c) is not a face

private:
    static uint64_t key(Vertex u, Vertex v) {
        return (uint64_t(uint32_t(u)) << 32) | uint32_t(v);
    }
    const Triangulation* t_;
    std::vector<Face> faces_;
    std::unordered_map<uint64_t, int> pos_;        // directed edge -> index in rot(u)
    std::unordered_map<uint64_t, int> face_left_;  // directed edge -> face id
};

/// Dual graph: one node per face, adjacent across every shared edge.
/// For a valid triangulation it is cubic, bridgeless and has 2n-4 nodes.
struct DualGraph {
    std::vector<Face> faces;
    std::vector<std::array<int, 3>> adj;                          // per face, the 3 neighbouring faces
    std::unordered_map<Edge, std::pair<int, int>, EdgeHash> edge_faces;  // primal edge -> dual edge

    int node_count() const { return int(faces.size()); }
    bool has_bridge() const;  // brute force: delete each dual edge, test connectivity
};

std::vector<Face> faces(const Triangulation& t);
DualGraph dual(const Triangulation& t);

/// Stable digest of the labelled rotation system (the outerface is bookkeeping
/// and not part of the digest); cheap, not canonical.
uint64_t labeled_hash(const Triangulation& t);

/// Builds a triangulation from rotations alone, designating the first
/// traversed face as outer. Empty when the rotation system is not a valid
/// plane triangulation.
std::optional<Triangulation> triangulation_from_rotations(std::vector<std::vector<Vertex>> rot);

/// Parse the `.tri` text format:
///   line 1: `n <count>`, then `v: w1 w2 ... wk` per vertex, finally `outer: a b c`.
/// `#` starts a comment. Throws domain_error on malformed input or invariant breaches.
Triangulation parse_tri(std::istream& in);
Triangulation parse_tri_string(const std::string& text);
Triangulation load_tri(const std::string& path);

std::string serialize_tri(const Triangulation& t);
void save_tri(const Triangulation& t, const std::string& path);

}  // namespace simflip

#endif
