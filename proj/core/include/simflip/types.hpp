#ifndef SIMFLIP_TYPES_HPP
#define SIMFLIP_TYPES_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace simflip {

using Vertex = int;

/// Undirected edge, stored with u < v.
struct Edge {
    Vertex u = -1;
    Vertex v = -1;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;

    bool touches(Vertex w) const { return u == w || v == w; }
    Vertex other(Vertex w) const { return u == w ? v : u; }
};

struct EdgeHash {
    size_t operator()(const Edge& e) const {
        return std::hash<uint64_t>()((uint64_t(uint32_t(e.u)) << 32) | uint32_t(e.v));
    }
};

/// Oriented triangular face (a,b,c); cyclic rotations denote the same face.
struct Face {
    std::array<Vertex, 3> v{-1, -1, -1};

    Face() = default;
    Face(Vertex a, Vertex b, Vertex c) : v{a, b, c} {}

    bool contains(Vertex w) const { return v[0] == w || v[1] == w || v[2] == w; }
    bool has_edge(const Edge& e) const {
        return contains(e.u) && contains(e.v);
    }
    /// Canonical representative: rotate so the smallest vertex comes first.
    Face normalized() const {
        int k = 0;
        if (v[1] < v[k]) k = 1;
        if (v[2] < v[k]) k = 2;
        return Face(v[k], v[(k + 1) % 3], v[(k + 2) % 3]);
    }
    bool operator==(const Face&) const = default;
};

struct FaceHash {
    size_t operator()(const Face& f) const {
        size_t h = 1469598103934665603ull;
        for (Vertex x : f.v) h = (h ^ size_t(uint32_t(x))) * 1099511628211ull;
        return h;
    }
};

/// Unordered vertex triple, e.g. a triangle regardless of orientation.
struct Triple {
    std::array<Vertex, 3> v{-1, -1, -1};

    Triple() = default;
    Triple(Vertex a, Vertex b, Vertex c) : v{a, b, c} {
        if (v[0] > v[1]) std::swap(v[0], v[1]);
        if (v[1] > v[2]) std::swap(v[1], v[2]);
        if (v[0] > v[1]) std::swap(v[0], v[1]);
    }
    explicit Triple(const Face& f) : Triple(f.v[0], f.v[1], f.v[2]) {}

    bool contains(Vertex w) const { return v[0] == w || v[1] == w || v[2] == w; }
    bool operator==(const Triple&) const = default;
    auto operator<=>(const Triple&) const = default;
};

struct TripleHash {
    size_t operator()(const Triple& t) const {
        size_t h = 14695981039346656037ull;
        for (Vertex x : t.v) h = (h ^ size_t(uint32_t(x))) * 1099511628211ull;
        return h;
    }
};

/// Domain error: the input violates a documented precondition.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Postcondition breach: an internal guarantee failed. Callers treat this as a bug,
/// never as bad input.
class postcondition_error : public std::logic_error {
public:
    explicit postcondition_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw domain_error(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw postcondition_error(what);
}

}  // namespace simflip

#endif
