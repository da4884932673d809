#include "simflip/cover.hpp"

#include <algorithm>

#include "simflip/coloring.hpp"
#include "simflip/matching.hpp"

namespace simflip {

namespace {

struct Induced {
    Triangulation graph;
    std::vector<Vertex> old_ids;                 // new id -> old id
    std::unordered_map<Vertex, Vertex> new_ids;  // old id -> new id
};

// Induced embedded subgraph on `keep`; the caller promises the result is a
// triangulation and names its outerface (as an unordered triple of old ids).
Induced induced_subtriangulation(const Triangulation& t, const std::vector<Vertex>& keep,
                                 const Triple& outer) {
    Induced res;
    res.old_ids = keep;
    std::sort(res.old_ids.begin(), res.old_ids.end());
    for (int i = 0; i < int(res.old_ids.size()); ++i) res.new_ids[res.old_ids[size_t(i)]] = i;

    std::vector<std::vector<Vertex>> rot(res.old_ids.size());
    for (size_t i = 0; i < res.old_ids.size(); ++i)
        for (Vertex w : t.neighbors(res.old_ids[i])) {
            auto it = res.new_ids.find(w);
            if (it != res.new_ids.end()) rot[i].push_back(it->second);
        }

    // Orient the outerface: find the traversed face on these three vertices.
    Triple want(res.new_ids.at(outer.v[0]), res.new_ids.at(outer.v[1]),
                res.new_ids.at(outer.v[2]));
    Face oriented;
    bool found = false;
    for (const Face& f : faces(Triangulation(rot, Face(want.v[0], want.v[1], want.v[2]))))
        if (Triple(f) == want) {
            oriented = f;
            found = true;
            break;
        }
    ensure(found, "induced_subtriangulation: outer triple is not a face");
    res.graph = Triangulation(std::move(rot), oriented);
    ValidationReport rep = validate(res.graph);
    ensure(rep.ok, "induced_subtriangulation: region is not a triangulation");
    return res;
}

Edge map_edge(const Induced& region, const Edge& e_old) {
    return Edge(region.new_ids.at(e_old.u), region.new_ids.at(e_old.v));
}

Edge unmap_edge(const Induced& region, const Edge& e_new) {
    return Edge(region.old_ids[size_t(e_new.u)], region.old_ids[size_t(e_new.v)]);
}

bool region_has_edge(const Induced& region, const Edge& e_old) {
    auto iu = region.new_ids.find(e_old.u);
    auto iv = region.new_ids.find(e_old.v);
    return iu != region.new_ids.end() && iv != region.new_ids.end() &&
           region.graph.adjacent(iu->second, iv->second);
}

}  // namespace

FlipSet face_set(const Triangulation& t, std::optional<Edge> forced) {
    EmbeddingIndex idx(t);
    if (forced)
        require(idx.adjacent(forced->u, forced->v), "face_set: forced edge not in graph");

    int fcount = idx.face_count();
    int skip_a = -1, skip_b = -1;
    if (forced) {
        auto [fa, fb] = idx.incident_faces(*forced);
        skip_a = fa;
        skip_b = fb;
    }

    // Dual matching instance on the faces, minus the forced edge's two faces.
    std::vector<std::vector<int>> adj(static_cast<size_t>(fcount));
    std::unordered_map<uint64_t, Edge> shared;
    auto pkey = [](int f, int g) {
        if (f > g) std::swap(f, g);
        return (uint64_t(uint32_t(f)) << 32) | uint32_t(g);
    };
    for (const Edge& e : t.edges()) {
        auto [f, g] = idx.incident_faces(e);
        if (f == skip_a || f == skip_b || g == skip_a || g == skip_b) continue;
        adj[size_t(f)].push_back(g);
        adj[size_t(g)].push_back(f);
        shared[pkey(f, g)] = e;
    }

    std::vector<int> mate = max_matching(fcount, adj);
    std::vector<Edge> out;
    if (forced) out.push_back(*forced);
    for (int f = 0; f < fcount; ++f) {
        if (f == skip_a || f == skip_b) {
            ensure(mate[size_t(f)] == -1, "face_set: forced face matched twice");
            continue;
        }
        ensure(mate[size_t(f)] != -1, "face_set: dual matching is not perfect");
        if (f < mate[size_t(f)]) out.push_back(shared.at(pkey(f, mate[size_t(f)])));
    }
    FlipSet s = make_flipset(std::move(out));
    ensure(int(s.size()) == t.size() - 2, "face_set: expected n-2 edges");
    return s;
}

FlipSet triangle_set(const Triangulation& t, const ContainmentOrder& order,
                     std::optional<Edge> forced) {
    if (forced)
        require(t.adjacent(forced->u, forced->v), "triangle_set: forced edge not in graph");

    // Peel regions innermost first. Each region is the area between a
    // separating triangle and the triangles peeled before it; the leftover
    // core has no separating triangle.
    std::vector<Induced> regions;           // peeled regions, interface = its triangle
    std::vector<Triple> interfaces;         // triangle of each peeled region
    Triangulation cur = t;
    std::vector<Vertex> cur_old(static_cast<size_t>(t.size()));
    for (int i = 0; i < t.size(); ++i) cur_old[size_t(i)] = i;

    for (const SeparatingTriangle& st : order.triangles) {
        // triangle in cur ids
        std::unordered_map<Vertex, Vertex> to_cur;
        for (int i = 0; i < int(cur_old.size()); ++i) to_cur[cur_old[size_t(i)]] = i;
        Triple tri_cur(to_cur.at(st.tri.v[0]), to_cur.at(st.tri.v[1]), to_cur.at(st.tri.v[2]));

        // inner component of tri in cur
        int m = cur.size();
        std::vector<int> comp(size_t(m), -1);
        for (Vertex v : tri_cur.v) comp[size_t(v)] = -2;
        int ncomp = 0;
        for (Vertex s = 0; s < m; ++s) {
            if (comp[size_t(s)] != -1) continue;
            std::vector<Vertex> stack{s};
            comp[size_t(s)] = ncomp;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Vertex u : cur.neighbors(v))
                    if (comp[size_t(u)] == -1) {
                        comp[size_t(u)] = ncomp;
                        stack.push_back(u);
                    }
            }
            ++ncomp;
        }
        ensure(ncomp == 2, "triangle_set: peeled triangle no longer separates");
        int outer_comp = -1;
        for (Vertex w : cur.outerface().v)
            if (comp[size_t(w)] >= 0) outer_comp = comp[size_t(w)];
        ensure(outer_comp >= 0, "triangle_set: outerface vertex lost");

        std::vector<Vertex> inner_keep, outer_keep;
        for (Vertex v = 0; v < m; ++v) {
            if (comp[size_t(v)] == -2) {
                inner_keep.push_back(v);
                outer_keep.push_back(v);
            } else if (comp[size_t(v)] == outer_comp) {
                outer_keep.push_back(v);
            } else {
                inner_keep.push_back(v);
            }
        }

        Induced inner = induced_subtriangulation(cur, inner_keep, tri_cur);
        // translate ids back to the original graph
        for (auto& id : inner.old_ids) id = cur_old[size_t(id)];
        inner.new_ids.clear();
        for (int i = 0; i < int(inner.old_ids.size()); ++i)
            inner.new_ids[inner.old_ids[size_t(i)]] = i;
        regions.push_back(std::move(inner));
        interfaces.push_back(st.tri);

        Induced rest = induced_subtriangulation(
            cur, outer_keep,
            Triple(cur.outerface().v[0], cur.outerface().v[1], cur.outerface().v[2]));
        std::vector<Vertex> next_old(rest.old_ids.size());
        for (size_t i = 0; i < rest.old_ids.size(); ++i)
            next_old[i] = cur_old[size_t(rest.old_ids[i])];
        cur = rest.graph;
        cur_old = std::move(next_old);
    }

    // core region
    Induced core;
    core.graph = cur;
    core.old_ids = cur_old;
    for (int i = 0; i < int(cur_old.size()); ++i) core.new_ids[cur_old[size_t(i)]] = i;
    regions.push_back(std::move(core));
    interfaces.emplace_back();  // sentinel

    int rcount = int(regions.size());
    int core_id = rcount - 1;

    // region tree: the parent of peeled region i is the unique other region
    // holding interface i as a face
    std::vector<std::vector<std::pair<int, int>>> tree(static_cast<size_t>(rcount));  // (other region, interface id)
    for (int i = 0; i + 1 < rcount; ++i) {
        const Triple& tri = interfaces[size_t(i)];
        int parent = -1;
        for (int j = 0; j < rcount; ++j) {
            if (j == i) continue;
            const Induced& rg = regions[size_t(j)];
            auto a = rg.new_ids.find(tri.v[0]);
            auto b = rg.new_ids.find(tri.v[1]);
            auto c = rg.new_ids.find(tri.v[2]);
            if (a == rg.new_ids.end() || b == rg.new_ids.end() || c == rg.new_ids.end())
                continue;
            if (EmbeddingIndex(rg.graph).face_index_of(
                    Face(a->second, b->second, c->second).normalized()) >= 0 ||
                EmbeddingIndex(rg.graph).face_index_of(
                    Face(a->second, c->second, b->second).normalized()) >= 0) {
                parent = j;
                break;
            }
        }
        ensure(parent >= 0, "triangle_set: interface triangle has no parent region");
        tree[size_t(i)].push_back({parent, i});
        tree[size_t(parent)].push_back({i, i});
    }

    // choose the root: the region holding the forced edge, otherwise the core
    int root = core_id;
    if (forced) {
        for (int i = 0; i < rcount; ++i)
            if (region_has_edge(regions[size_t(i)], *forced)) {
                root = i;
                break;
            }
        ensure(root >= 0, "triangle_set: forced edge in no region");
    }

    // solve regions outward from the root; each non-root region is forced on
    // the cover edge its interface already received
    std::vector<Edge> cover;
    std::vector<std::optional<FlipSet>> solved(static_cast<size_t>(rcount));
    std::unordered_map<Edge, char, EdgeHash> cover_set;
    std::vector<int> bfs{root};
    std::vector<char> visited(size_t(rcount), 0);
    visited[size_t(root)] = 1;
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        int r = bfs[qi];
        const Induced& rg = regions[size_t(r)];
        std::optional<Edge> force_here;
        if (r == root) {
            if (forced) force_here = map_edge(rg, *forced);
        } else {
            // find the already-chosen cover edge on this region's entry interface
            int iface = -1;
            for (auto [other, tri_id] : tree[size_t(r)])
                if (visited[size_t(other)] && solved[size_t(other)]) iface = tri_id;
            ensure(iface >= 0, "triangle_set: region reached before its anchor");
            const Triple& tri = interfaces[size_t(iface)];
            Edge opts[3] = {Edge(tri.v[0], tri.v[1]), Edge(tri.v[0], tri.v[2]),
                            Edge(tri.v[1], tri.v[2])};
            int hits = 0;
            Edge anchor;
            for (const Edge& e : opts)
                if (cover_set.count(e)) {
                    anchor = e;
                    ++hits;
                }
            ensure(hits == 1, "triangle_set: interface must hold exactly one cover edge");
            force_here = map_edge(rg, anchor);
        }
        FlipSet local = face_set(rg.graph, force_here);
        for (const Edge& e : local) {
            Edge orig = unmap_edge(rg, e);
            if (!cover_set.count(orig)) {
                cover_set[orig] = 1;
                cover.push_back(orig);
            }
        }
        solved[size_t(r)] = std::move(local);
        for (auto [other, tri_id] : tree[size_t(r)]) {
            (void)tri_id;
            if (!visited[size_t(other)]) {
                visited[size_t(other)] = 1;
                bfs.push_back(other);
            }
        }
    }

    FlipSet result = make_flipset(std::move(cover));

    // Every triangle of t must hold exactly one cover edge.
    EmbeddingIndex idx(t);
    for (const Face& f : idx.faces()) {
        int c = 0;
        for (int i = 0; i < 3; ++i)
            c += cover_set.count(Edge(f.v[i], f.v[(i + 1) % 3])) ? 1 : 0;
        ensure(c == 1, "triangle_set: face without exactly one cover edge");
    }
    for (const SeparatingTriangle& st : order.triangles) {
        int c = 0;
        for (int i = 0; i < 3; ++i)
            c += cover_set.count(Edge(st.tri.v[i], st.tri.v[(i + 1) % 3])) ? 1 : 0;
        ensure(c == 1, "triangle_set: separating triangle without exactly one cover edge");
    }
    if (forced) ensure(cover_set.count(*forced) == 1, "triangle_set: forced edge dropped");
    return result;
}

FlipSet triangle_set(const Triangulation& t, std::optional<Edge> forced) {
    return triangle_set(t, containment_order(t), forced);
}

std::pair<FlipSet, Triangulation> four_connectify(const Triangulation& t) {
    require(t.size() >= 6, "four_connectify: need n >= 6");
    ContainmentOrder order = containment_order(t);
    if (order.triangles.empty()) return {FlipSet{}, t};

    FlipSet cover = triangle_set(t, order);
    std::unordered_set<Edge, EdgeHash> sep_edges;
    for (const SeparatingTriangle& st : order.triangles)
        for (int i = 0; i < 3; ++i)
            sep_edges.insert(Edge(st.tri.v[i], st.tri.v[(i + 1) % 3]));

    std::vector<Edge> flip;
    for (const Edge& e : cover)
        if (sep_edges.count(e)) flip.push_back(e);
    FlipSet s = make_flipset(std::move(flip));

    FlipCheck chk = check_flipset(t, s);
    ensure(chk.ok, "four_connectify: cover edges in separating triangles must be flippable");
    auto [result, rec] = apply_flipset(t, s);
    (void)rec;
    ensure(!has_separating_triangle(result), "four_connectify: result still has a separating triangle");
    for (Vertex v = 0; v < result.size(); ++v)
        ensure(result.degree(v) >= 4, "four_connectify: result has a low-degree vertex");
    return {std::move(s), std::move(result)};
}

TaitColoring tait_coloring(const Triangulation& t) {
    std::vector<int> vc = planar_four_coloring(t);
    TaitColoring tait;
    for (const Edge& e : t.edges()) {
        int a = vc[size_t(e.u)], b = vc[size_t(e.v)];
        ensure(a != b, "tait_coloring: vertex colouring not proper");
        int cls;
        if ((a == 0 && b == 1) || (a == 1 && b == 0) || (a == 2 && b == 3) || (a == 3 && b == 2))
            cls = 0;
        else if ((a == 0 && b == 2) || (a == 2 && b == 0) || (a == 1 && b == 3) ||
                 (a == 3 && b == 1))
            cls = 1;
        else
            cls = 2;
        tait.class_of[e] = cls;
        tait.classes[size_t(cls)].push_back(e);
    }
    // trichromatic on faces by construction; checked here once per call
    for (const Face& f : faces(t)) {
        int mask = 0;
        for (int i = 0; i < 3; ++i) mask |= 1 << tait.class_of.at(Edge(f.v[i], f.v[(i + 1) % 3]));
        ensure(mask == 7, "tait_coloring: face is not trichromatic");
    }
    return tait;
}

std::array<FlipSet, 3> three_disjoint_flips(const Triangulation& t) {
    require(t.size() >= 6, "three_disjoint_flips: need n >= 6");
    TaitColoring tait = tait_coloring(t);

    std::unordered_set<Edge, EdgeHash> sep_edges;
    for (const SeparatingTriangle& st : separating_triangles(t))
        for (int i = 0; i < 3; ++i)
            sep_edges.insert(Edge(st.tri.v[i], st.tri.v[(i + 1) % 3]));

    std::array<FlipSet, 3> out;
    for (int c = 0; c < 3; ++c) {
        std::vector<Edge> s;
        for (const Edge& e : tait.classes[size_t(c)])
            if (sep_edges.count(e)) s.push_back(e);
        out[size_t(c)] = make_flipset(std::move(s));
        FlipCheck chk = check_flipset(t, out[size_t(c)]);
        ensure(chk.ok, "three_disjoint_flips: colour class is not flippable");
    }
    return out;
}

}  // namespace simflip
