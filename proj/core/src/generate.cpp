#include "simflip/generate.hpp"

#include <algorithm>
#include <map>

namespace simflip {

Triangulation from_faces(int n, const std::vector<Face>& face_list, int outer_index) {
    require(n >= 3, "from_faces: need n >= 3");
    // At vertex a, a face (a,b,c) pins c as the ccw successor of b.
    std::vector<std::map<Vertex, Vertex>> succ(static_cast<size_t>(n));
    for (const Face& f : face_list)
        for (int i = 0; i < 3; ++i) {
            Vertex a = f.v[i], b = f.v[(i + 1) % 3], c = f.v[(i + 2) % 3];
            auto [it, fresh] = succ[a].emplace(b, c);
            require(fresh, "from_faces: inconsistent or duplicated faces");
            (void)it;
        }
    std::vector<std::vector<Vertex>> rot(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        require(!succ[v].empty(), "from_faces: isolated vertex " + std::to_string(v));
        Vertex start = succ[v].begin()->first;
        Vertex cur = start;
        do {
            rot[v].push_back(cur);
            auto it = succ[v].find(cur);
            require(it != succ[v].end(), "from_faces: rotation does not close");
            cur = it->second;
        } while (cur != start && rot[v].size() <= succ[v].size());
        require(cur == start && rot[v].size() == succ[v].size(),
                "from_faces: rotation at vertex " + std::to_string(v) + " does not close");
    }
    Triangulation t(std::move(rot), face_list[size_t(outer_index)]);
    ValidationReport rep = validate(t);
    if (!rep.ok) throw domain_error("from_faces: invalid result: " + rep.violations.front());
    return t;
}

Triangulation k4() {
    return from_faces(4, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}});
}

Triangulation k5_minus_edge() {
    // Dominant 0 and 1; path 2-3-4. The missing edge is 2-4.
    return generate_standard(5);
}

Triangulation octahedron() {
    // Antipodal pairs (0,3), (1,4), (2,5).
    return from_faces(6, {{0, 1, 2},
                          {0, 2, 4},
                          {0, 4, 5},
                          {0, 5, 1},
                          {3, 2, 1},
                          {3, 4, 2},
                          {3, 5, 4},
                          {3, 1, 5}});
}

Triangulation icosahedron() {
    std::vector<Face> fs;
    for (int i = 1; i <= 5; ++i) {
        int inext = i == 5 ? 1 : i + 1;
        int li = 5 + i;
        int mi = i == 5 ? 6 : 6 + i;
        fs.push_back({0, i, inext});
        fs.push_back({11, 5 + inext, li});
        fs.push_back({i, li, mi});
        fs.push_back({i, mi, inext});
    }
    return from_faces(12, fs);
}

Triangulation generate_standard(int n) {
    require(n >= 4, "generate_standard: need n >= 4");
    // 0 and 1 dominant, 2..n-1 the path.
    std::vector<Face> fs;
    fs.push_back({0, 2, 1});  // outer
    fs.push_back({1, n - 1, 0});
    for (Vertex i = 2; i + 1 < n; ++i) {
        fs.push_back({0, i + 1, i});
        fs.push_back({1, i, i + 1});
    }
    return from_faces(n, fs, 0);
}

uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) {
    // Rejection sampling keeps results identical across standard libraries.
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % bound;
    uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

namespace {

// Minimal mutable rotation system used only while growing random instances.
struct GrowState {
    std::vector<std::vector<Vertex>> rot;
    std::vector<Face> face_list;

    int pos_of(Vertex u, Vertex v) const {
        const auto& r = rot[u];
        for (int i = 0; i < int(r.size()); ++i)
            if (r[i] == v) return i;
        return -1;
    }
    bool adjacent(Vertex u, Vertex v) const { return pos_of(u, v) >= 0; }
    Vertex next_ccw(Vertex u, Vertex v) const {
        const auto& r = rot[u];
        return r[size_t((pos_of(u, v) + 1) % int(r.size()))];
    }
    void insert_after(Vertex u, Vertex after, Vertex w) {
        auto& r = rot[u];
        r.insert(r.begin() + pos_of(u, after) + 1, w);
    }
    void erase(Vertex u, Vertex w) {
        auto& r = rot[u];
        r.erase(r.begin() + pos_of(u, w));
    }

    // Split face (a,b,c) with a fresh degree-3 vertex.
    void insert_vertex(int face_idx) {
        Face f = face_list[size_t(face_idx)];
        Vertex a = f.v[0], b = f.v[1], c = f.v[2];
        Vertex v = Vertex(rot.size());
        rot.push_back({a, b, c});
        insert_after(a, b, v);
        insert_after(b, c, v);
        insert_after(c, a, v);
        face_list[size_t(face_idx)] = {a, b, v};
        face_list.push_back({b, c, v});
        face_list.push_back({c, a, v});
    }

    // Individual diagonal flip; returns false when the edge is blocked.
    bool try_flip(Vertex v, Vertex w) {
        Vertex x = next_ccw(v, w);
        Vertex y = next_ccw(w, v);
        if (x == y || adjacent(x, y)) return false;
        erase(v, w);
        erase(w, v);
        insert_after(x, v, y);
        insert_after(y, w, x);
        return true;
    }
};

}  // namespace

Triangulation generate_random(int n, uint64_t seed) {
    require(n >= 4, "generate_random: need n >= 4");
    std::mt19937_64 rng(seed);

    Triangulation base = k4();
    GrowState g;
    g.rot = base.rotation();
    g.face_list = faces(base);

    while (int(g.rot.size()) < n)
        g.insert_vertex(int(rng_below(rng, g.face_list.size())));

    if (n >= 5) {
        // Mix with 10n random individual flips; blocked draws are retried.
        std::vector<Edge> edge_list;
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : g.rot[v])
                if (v < w) edge_list.emplace_back(v, w);
        int flips_done = 0;
        while (flips_done < 10 * n) {
            Edge& e = edge_list[rng_below(rng, edge_list.size())];
            Vertex x = g.next_ccw(e.u, e.v);
            Vertex y = g.next_ccw(e.v, e.u);
            if (!g.try_flip(e.u, e.v)) continue;
            e = Edge(x, y);
            ++flips_done;
        }
    }

    // Any face works as the outerface; take the face left of 0 -> rot[0][0].
    std::vector<std::vector<Vertex>> rot = g.rot;
    Vertex a = 0, b = rot[0][0];
    Vertex c = rot[0][1 % rot[0].size()];
    Triangulation t(std::move(rot), Face(a, b, c));
    ValidationReport rep = validate(t);
    ensure(rep.ok, "generate_random produced an invalid triangulation");
    return t;
}

}  // namespace simflip
