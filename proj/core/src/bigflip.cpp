#include "simflip/bigflip.hpp"

#include <algorithm>
#include <cmath>

#include "simflip/connectivity.hpp"
#include "simflip/generate.hpp"

namespace simflip {

EdgeClassification classify_edges(const Triangulation& t) {
    EmbeddingIndex idx(t);
    std::unordered_map<Edge, std::vector<Edge>, EdgeHash> by_seers;
    for (const Edge& e : t.edges()) {
        auto [x, y] = idx.seers(e);
        by_seers[Edge(x, y)].push_back(e);
    }
    EdgeClassification cls;
    for (auto& [seers, members] : by_seers)
        for (const Edge& e : members) {
            auto& out = cls.partners[e];
            for (const Edge& f : members)
                if (!(f == e)) out.push_back(f);
            std::sort(out.begin(), out.end());
        }
    return cls;
}

std::array<FlipSet, 3> si_sets(const Triangulation& t, const TaitColoring& coloring) {
    EmbeddingIndex idx(t);
    std::array<FlipSet, 3> out;
    for (int c = 0; c < 3; ++c) {
        // group this class by seer pair; singletons survive
        std::unordered_map<Edge, std::vector<Edge>, EdgeHash> by_seers;
        for (const Edge& e : coloring.classes[size_t(c)]) {
            auto [x, y] = idx.seers(e);
            by_seers[Edge(x, y)].push_back(e);
        }
        std::vector<Edge> keep;
        for (auto& [seers, members] : by_seers)
            if (members.size() == 1) keep.push_back(members.front());
        out[size_t(c)] = make_flipset(std::move(keep));
        FlipCheck chk = check_flipset(idx, out[size_t(c)]);
        ensure(chk.ok, "si_sets: class is not flippable");
    }
    // every separating-triangle edge is kept by its class
    std::unordered_set<Edge, EdgeHash> kept;
    for (const auto& s : out) kept.insert(s.begin(), s.end());
    for (const SeparatingTriangle& st : separating_triangles(t))
        for (int i = 0; i < 3; ++i)
            ensure(kept.count(Edge(st.tri.v[size_t(i)], st.tri.v[size_t((i + 1) % 3)])) == 1,
                   "si_sets: separating triangle edge dropped from all classes");
    return out;
}

namespace {

// One shrink step of large_flip, able to lift a flippable set of the child
// graph to one of the parent with at least one more edge.
struct Reduction {
    enum class Kind { ThreeFour, FourFour, Boundary };
    Kind kind;
    Triangulation child;
    std::vector<Vertex> child_to_parent;
    std::unordered_map<Vertex, Vertex> parent_to_child;

    // ThreeFour: vw with deg(v)=3; x,y see vw; z is w's fourth neighbour.
    // FourFour: vw with both degree 4; b,d see vw; a at v, c at w; added_ac
    //           tells which diagonal the child received.
    // Boundary: degree-4 vertex v with neighbours (a,b,c,d) and the bad pair
    //           {ad, bc} seen by {v, x}; the child merges d into a, c into b.
    Vertex v{}, w{}, x{}, y{}, z{};
    Vertex a{}, b{}, c{}, d{};
    bool added_ac = false;

    Edge parent_edge(const Edge& child_edge, const Triangulation& parent,
                     const std::unordered_set<Edge, EdgeHash>& deleted) const {
        Vertex p = child_to_parent[size_t(child_edge.u)];
        Vertex q = child_to_parent[size_t(child_edge.v)];
        if (kind != Kind::Boundary) return Edge(p, q);
        // merged endpoints may stand for their absorbed partners
        std::vector<Vertex> ps{p}, qs{q};
        if (p == a) ps.push_back(d);
        if (p == b) ps.push_back(c);
        if (q == a) qs.push_back(d);
        if (q == b) qs.push_back(c);
        std::optional<Edge> found;
        for (Vertex pp : ps)
            for (Vertex qq : qs) {
                Edge cand(pp, qq);
                if (!parent.adjacent(pp, qq) || deleted.count(cand)) continue;
                ensure(!found.has_value(), "large_flip: ambiguous lifted edge");
                found = cand;
            }
        ensure(found.has_value(), "large_flip: lifted edge missing in parent");
        return *found;
    }
};

std::pair<Triangulation, std::vector<Vertex>> compact(
    const std::vector<std::vector<Vertex>>& rot_by_old, const std::vector<Vertex>& keep) {
    std::unordered_map<Vertex, Vertex> to_new;
    for (int i = 0; i < int(keep.size()); ++i) to_new[keep[size_t(i)]] = i;
    std::vector<std::vector<Vertex>> rot(keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        for (Vertex u : rot_by_old[size_t(keep[i])]) rot[i].push_back(to_new.at(u));
    auto t = triangulation_from_rotations(std::move(rot));
    ensure(t.has_value(), "large_flip: reduced graph is not a triangulation");
    return {*t, keep};
}

// removes `gone` vertices from every rotation list (indexed by original ids)
std::vector<std::vector<Vertex>> strip_vertices(const Triangulation& t,
                                                const std::unordered_set<Vertex>& gone) {
    std::vector<std::vector<Vertex>> rot(static_cast<size_t>(t.size()));
    for (Vertex v = 0; v < t.size(); ++v) {
        if (gone.count(v)) continue;
        for (Vertex u : t.neighbors(v))
            if (!gone.count(u)) rot[size_t(v)].push_back(u);
    }
    return rot;
}

std::optional<Reduction> find_three_four(const Triangulation& t, const EmbeddingIndex& idx) {
    for (const Edge& e : t.edges()) {
        Vertex v = e.u, w = e.v;
        if (t.degree(v) == 4 && t.degree(w) == 3) std::swap(v, w);
        if (!(t.degree(v) == 3 && t.degree(w) == 4)) continue;
        Reduction red;
        red.kind = Reduction::Kind::ThreeFour;
        red.v = v;
        red.w = w;
        std::tie(red.x, red.y) = idx.seers(Edge(v, w));
        for (Vertex u : t.neighbors(w))
            if (u != v && u != red.x && u != red.y) red.z = u;

        auto rot = strip_vertices(t, {v, w});
        std::vector<Vertex> keep;
        for (Vertex u = 0; u < t.size(); ++u)
            if (u != v && u != w) keep.push_back(u);
        std::tie(red.child, red.child_to_parent) = compact(rot, keep);
        for (int i = 0; i < int(keep.size()); ++i) red.parent_to_child[keep[size_t(i)]] = i;
        return red;
    }
    return std::nullopt;
}

std::optional<Reduction> find_four_four(const Triangulation& t, const EmbeddingIndex& idx) {
    for (const Edge& e : t.edges()) {
        Vertex v = e.u, w = e.v;
        if (!(t.degree(v) == 4 && t.degree(w) == 4)) continue;
        Reduction red;
        red.kind = Reduction::Kind::FourFour;
        red.v = v;
        red.w = w;
        std::tie(red.b, red.d) = idx.seers(e);
        for (Vertex u : t.neighbors(v))
            if (u != w && u != red.b && u != red.d) red.a = u;
        for (Vertex u : t.neighbors(w))
            if (u != v && u != red.b && u != red.d) red.c = u;
        ensure(red.a != red.c, "large_flip: K5 minus an edge beyond the base size");

        if (!t.adjacent(red.a, red.c)) {
            red.added_ac = true;
        } else {
            ensure(!t.adjacent(red.b, red.d), "large_flip: both quad diagonals present");
            red.added_ac = false;
        }

        // The deleted hub pair sits in one contiguous run of each corner's
        // rotation; the new diagonal takes exactly that angular slot.
        auto rot = strip_vertices(t, {v, w});
        Vertex p = red.added_ac ? red.a : red.b;
        Vertex q = red.added_ac ? red.c : red.d;
        auto splice_diag = [&](Vertex host, Vertex add) {
            std::vector<Vertex> fresh;
            bool placed = false;
            for (Vertex u : t.neighbors(host)) {
                if (u == v || u == w) {
                    if (!placed) fresh.push_back(add);
                    placed = true;
                } else {
                    fresh.push_back(u);
                }
            }
            ensure(placed, "large_flip: hub slot missing at a quad corner");
            rot[size_t(host)] = std::move(fresh);
        };
        splice_diag(p, q);
        splice_diag(q, p);

        std::vector<Vertex> keep;
        for (Vertex u = 0; u < t.size(); ++u)
            if (u != v && u != w) keep.push_back(u);
        std::tie(red.child, red.child_to_parent) = compact(rot, keep);
        for (int i = 0; i < int(keep.size()); ++i) red.parent_to_child[keep[size_t(i)]] = i;
        return red;
    }
    return std::nullopt;
}

std::optional<Reduction> find_boundary(const Triangulation& t, const EmbeddingIndex& idx) {
    for (Vertex v = 0; v < t.size(); ++v) {
        if (t.degree(v) != 4) continue;
        const auto& nb = t.neighbors(v);
        // the two opposite pairs of edges seen by v
        for (int r = 0; r < 2; ++r) {
            Vertex a = nb[size_t((0 + r) % 4)], b = nb[size_t((1 + r) % 4)],
                   c = nb[size_t((2 + r) % 4)], d = nb[size_t((3 + r) % 4)];
            Edge ad(a, d), bc(b, c);
            auto [s1, s2] = idx.seers(ad);
            Vertex x = s1 == v ? s2 : s1;
            auto [s3, s4] = idx.seers(bc);
            Vertex x2 = s3 == v ? s4 : s3;
            if (x != x2) continue;
            ensure(s1 == v || s2 == v, "large_flip: quad edge not seen by its hub");

            Reduction red;
            red.kind = Reduction::Kind::Boundary;
            red.v = v;
            red.a = a;
            red.b = b;
            red.c = c;
            red.d = d;
            red.x = x;

            // fans of d and c strictly inside the triangle (c,d,x)
            auto fan_between = [&](Vertex host, Vertex from, Vertex to) {
                const auto& rot = t.neighbors(host);
                int m = int(rot.size());
                int start = -1;
                for (int i = 0; i < m; ++i)
                    if (rot[size_t(i)] == from) start = i;
                std::vector<Vertex> fan;
                for (int i = 1; i < m; ++i) {
                    Vertex cur = rot[size_t((start + i) % m)];
                    if (cur == to) return fan;
                    fan.push_back(cur);
                }
                throw postcondition_error("large_flip: fan walk failed");
            };
            // ccw rotations: at d the run is (a, v, c, w_k..w_1, x); the fan
            // between c and x is already ordered for insertion after b at a
            std::vector<Vertex> fan_d = fan_between(d, c, x);
            std::vector<Vertex> fan_c = fan_between(c, x, d);

            auto rot = strip_vertices(t, {v});
            auto remove_all = [&](Vertex host, std::initializer_list<Vertex> zap) {
                auto& r = rot[size_t(host)];
                r.erase(std::remove_if(r.begin(), r.end(),
                                       [&](Vertex u) {
                                           for (Vertex z : zap)
                                               if (u == z) return true;
                                           return false;
                                       }),
                        r.end());
            };
            auto insert_after = [&](Vertex host, Vertex anchor, const std::vector<Vertex>& seq) {
                auto& r = rot[size_t(host)];
                for (int i = 0; i < int(r.size()); ++i)
                    if (r[size_t(i)] == anchor) {
                        r.insert(r.begin() + i + 1, seq.begin(), seq.end());
                        return;
                    }
                throw postcondition_error("large_flip: anchor vanished");
            };
            remove_all(a, {d});
            insert_after(a, b, fan_d);  // ccw at a: ..., b, fan_d(= w_k..w_1), x, ...
            remove_all(b, {c});
            insert_after(b, x, fan_c);  // ccw at b: ..., x, fan_c(= u_1..u_j), a, ...
            remove_all(x, {c, d});
            for (Vertex u : fan_d)
                for (auto& entry : rot[size_t(u)])
                    if (entry == d) entry = a;
            for (Vertex u : fan_c)
                for (auto& entry : rot[size_t(u)])
                    if (entry == c) entry = b;
            rot[size_t(c)].clear();
            rot[size_t(d)].clear();

            std::vector<Vertex> keep;
            for (Vertex u = 0; u < t.size(); ++u)
                if (u != v && u != c && u != d) keep.push_back(u);
            std::tie(red.child, red.child_to_parent) = compact(rot, keep);
            for (int i = 0; i < int(keep.size()); ++i) red.parent_to_child[keep[size_t(i)]] = i;
            return red;
        }
    }
    return std::nullopt;
}

// Lift a flippable set of the child through one reduction; returns candidate
// parent sets in preference order (the first one passing the check wins).
std::vector<FlipSet> lift_candidates(const Reduction& red, const Triangulation& parent,
                                     const FlipSet& child_set) {
    std::unordered_set<Edge, EdgeHash> deleted;
    if (red.kind == Reduction::Kind::Boundary) {
        deleted.insert(Edge(red.c, red.d));
        deleted.insert(Edge(red.d, red.x));
        deleted.insert(Edge(red.x, red.c));
        deleted.insert(Edge(red.a, red.d));
        deleted.insert(Edge(red.b, red.c));
    }
    // The FourFour child owns one edge the parent lacks: the quad diagonal.
    // When the child set uses it, it is dropped here and the hub-edge
    // additions below must make up a net gain of one.
    std::optional<Edge> diag_child;
    if (red.kind == Reduction::Kind::FourFour) {
        Vertex p = red.added_ac ? red.a : red.b;
        Vertex q = red.added_ac ? red.c : red.d;
        diag_child = Edge(red.parent_to_child.at(p), red.parent_to_child.at(q));
    }
    std::vector<Edge> base;
    std::unordered_set<Edge, EdgeHash> in_base;
    for (const Edge& e : child_set) {
        if (diag_child && e == *diag_child) continue;
        Edge pe = red.parent_edge(e, parent, deleted);
        base.push_back(pe);
        in_base.insert(pe);
    }

    std::vector<std::vector<Edge>> additions;
    switch (red.kind) {
        case Reduction::Kind::ThreeFour: {
            int in_link = int(in_base.count(Edge(red.x, red.y))) +
                          int(in_base.count(Edge(red.x, red.z))) +
                          int(in_base.count(Edge(red.y, red.z)));
            ensure(in_link <= 1, "large_flip: two link edges in the child set");
            if (in_base.count(Edge(red.x, red.z))) {
                additions.push_back({Edge(red.y, red.w)});
                additions.push_back({Edge(red.x, red.w)});
            } else {
                additions.push_back({Edge(red.x, red.w)});
                additions.push_back({Edge(red.y, red.w)});
            }
            break;
        }
        case Reduction::Kind::FourFour: {
            std::vector<Edge> add;
            auto has = [&](Vertex p, Vertex q) { return in_base.count(Edge(p, q)) > 0; };
            Vertex v = red.v, w = red.w, a = red.a, b = red.b, c = red.c, d = red.d;
            if (red.added_ac) {
                if (has(a, b)) add.push_back(Edge(w, b));
                if (has(b, c)) add.push_back(Edge(v, b));
                if (has(c, d)) add.push_back(Edge(v, d));
                if (has(a, d)) add.push_back(Edge(w, d));
            } else {
                if (has(a, b)) add.push_back(Edge(v, d));
                if (has(a, d)) add.push_back(Edge(v, b));
                if (has(c, d)) add.push_back(Edge(w, b));
                if (has(b, c)) add.push_back(Edge(w, d));
            }
            if (add.empty()) add = {Edge(v, b), Edge(w, d)};
            // when both edges at one hub got added, drop either one
            auto both = [&](Vertex hub) {
                return std::count_if(add.begin(), add.end(),
                                     [&](const Edge& e) { return e.touches(hub); }) > 1;
            };
            if (both(v) || both(w)) {
                for (size_t drop = 0; drop < add.size(); ++drop) {
                    std::vector<Edge> alt;
                    for (size_t i = 0; i < add.size(); ++i)
                        if (i != drop) alt.push_back(add[i]);
                    additions.push_back(std::move(alt));
                }
            } else {
                additions.push_back(std::move(add));
            }
            // The case rules can clash when several quad edges sit in the
            // child set at once (e.g. ad and bc with (a,b,c) a face). Fall
            // back to every subset of the hub edges, largest first; the
            // caller validates each candidate anyway.
            std::array<Edge, 4> hub_edges{Edge(v, b), Edge(v, d), Edge(w, b), Edge(w, d)};
            for (int popc = 4; popc >= 1; --popc)
                for (int mask = 1; mask < 16; ++mask) {
                    if (__builtin_popcount(unsigned(mask)) != popc) continue;
                    std::vector<Edge> alt;
                    for (int i = 0; i < 4; ++i)
                        if (mask & (1 << i)) alt.push_back(hub_edges[size_t(i)]);
                    additions.push_back(std::move(alt));
                }
            break;
        }
        case Reduction::Kind::Boundary: {
            additions.push_back({Edge(red.v, red.d)});
            additions.push_back({Edge(red.v, red.a)});
            additions.push_back({Edge(red.v, red.b)});
            additions.push_back({Edge(red.v, red.c)});
            break;
        }
    }

    std::vector<FlipSet> out;
    for (const auto& add : additions) {
        std::vector<Edge> s = base;
        s.insert(s.end(), add.begin(), add.end());
        out.push_back(make_flipset(std::move(s)));
    }
    return out;
}

}  // namespace

FlipSet large_flip(const Triangulation& t) {
    require(t.size() >= 4, "large_flip: need n >= 4");
    require(validate(t).ok, "large_flip: invalid triangulation");

    std::vector<Reduction> chain;
    Triangulation cur = t;
    while (cur.size() > 6) {
        EmbeddingIndex idx(cur);
        std::optional<Reduction> red = find_three_four(cur, idx);
        if (!red) red = find_four_four(cur, idx);
        if (!red) red = find_boundary(cur, idx);
        if (!red) break;
        chain.push_back(std::move(*red));
        cur = chain.back().child;
    }

    FlipSet s;
    if (cur.size() <= 6) {
        MsfResult base = exact_max_flip(cur);
        ensure(base.exact, "large_flip: base case search must be exact");
        s = base.witness;
    } else {
        // terminal graph: no reduction applies, take the largest S_i
        std::array<FlipSet, 3> sets = si_sets(cur, tait_coloring(cur));
        s = *std::max_element(sets.begin(), sets.end(),
                              [](const FlipSet& p, const FlipSet& q) {
                                  return p.size() < q.size();
                              });
    }
    ensure(3 * int(s.size()) >= cur.size() - 2,
           "large_flip: theorem breach, largest class below (n-2)/3");

    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const Triangulation& parent = it == chain.rend() - 1 ? t : (it + 1)->child;
        size_t before = s.size();
        std::vector<FlipSet> cands = lift_candidates(*it, parent, s);
        bool lifted = false;
        std::string why;
        for (FlipSet& cand : cands) {
            if (cand.size() < before + 1) continue;
            FlipCheck chk = check_flipset(parent, cand);
            if (chk.ok) {
                s = std::move(cand);
                lifted = true;
                break;
            }
            for (const Violation& viol : chk.violations) why += " [" + viol.to_string() + "]";
        }
        if (!lifted) {
            why += " kind=" + std::to_string(int(it->kind)) + " v=" + std::to_string(it->v) +
                   " w=" + std::to_string(it->w) + " x=" + std::to_string(it->x) +
                   " y=" + std::to_string(it->y) + " z=" + std::to_string(it->z) +
                   " a=" + std::to_string(it->a) + " b=" + std::to_string(it->b) +
                   " c=" + std::to_string(it->c) + " d=" + std::to_string(it->d) +
                   " ac=" + std::to_string(it->added_ac) + " child_set=";
            for (const Edge& e : s)
                why += std::to_string(e.u) + "-" + std::to_string(e.v) + ",";
        }
        ensure(lifted, "large_flip: no lift candidate is flippable:" + why);
    }

    ensure(3 * int(s.size()) >= t.size() - 2, "large_flip: final set below (n-2)/3");
    FlipCheck chk = check_flipset(t, s);
    ensure(chk.ok, "large_flip: final set is not flippable");
    return s;
}

MsfResult exact_max_flip(const Triangulation& t, long node_budget) {
    require(t.size() >= 4, "exact_max_flip: need n >= 4");
    EmbeddingIndex idx(t);
    std::vector<Edge> edges = t.edges();
    int m = int(edges.size());
    std::unordered_map<Edge, int, EdgeHash> edge_id;
    for (int i = 0; i < m; ++i) edge_id[edges[size_t(i)]] = i;

    // conflicts: same face or same seer pair; implications: blocked -> blocker
    std::vector<std::vector<int>> conflict(static_cast<size_t>(m));
    std::vector<int> blocker(static_cast<size_t>(m), -1);
    std::vector<std::vector<int>> blocks(static_cast<size_t>(m));  // reverse implications
    {
        std::unordered_map<int, std::vector<int>> by_face;
        std::unordered_map<Edge, std::vector<int>, EdgeHash> by_seers;
        for (int i = 0; i < m; ++i) {
            auto [f, g] = idx.incident_faces(edges[size_t(i)]);
            by_face[f].push_back(i);
            by_face[g].push_back(i);
            auto [x, y] = idx.seers(edges[size_t(i)]);
            by_seers[Edge(x, y)].push_back(i);
            if (idx.adjacent(x, y)) {
                blocker[size_t(i)] = edge_id.at(Edge(x, y));
                blocks[size_t(edge_id.at(Edge(x, y)))].push_back(i);
            }
        }
        auto add_group = [&](const std::vector<int>& grp) {
            for (size_t i = 0; i < grp.size(); ++i)
                for (size_t j = i + 1; j < grp.size(); ++j) {
                    conflict[size_t(grp[i])].push_back(grp[j]);
                    conflict[size_t(grp[j])].push_back(grp[i]);
                }
        };
        for (auto& [f, grp] : by_face) add_group(grp);
        for (auto& [ss, grp] : by_seers) add_group(grp);
    }

    // order: most conflicted first keeps the search shallow
    std::vector<int> order(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(), [&](int p, int q) {
        return conflict[size_t(p)].size() > conflict[size_t(q)].size();
    });

    enum : int8_t { UNDECIDED = 0, IN = 1, OUT = 2 };
    std::vector<int8_t> state(static_cast<size_t>(m), UNDECIDED);
    int fcount = idx.face_count();
    std::vector<char> face_used(static_cast<size_t>(fcount), 0);
    int free_faces = fcount;

    // greedy incumbent
    MsfResult best;
    {
        std::vector<char> used_face(static_cast<size_t>(fcount), 0);
        std::vector<char> chosen(static_cast<size_t>(m), 0);
        for (int i : order) {
            if (blocker[size_t(i)] >= 0) continue;
            auto [f, g] = idx.incident_faces(edges[size_t(i)]);
            if (used_face[size_t(f)] || used_face[size_t(g)]) continue;
            bool ok = true;
            for (int j : conflict[size_t(i)])
                if (chosen[size_t(j)]) ok = false;
            if (!ok) continue;
            chosen[size_t(i)] = 1;
            used_face[size_t(f)] = used_face[size_t(g)] = 1;
        }
        std::vector<Edge> w;
        for (int i = 0; i < m; ++i)
            if (chosen[size_t(i)]) w.push_back(edges[size_t(i)]);
        best.witness = make_flipset(std::move(w));
        if (!check_flipset(idx, best.witness).ok) best.witness.clear();
        best.value = int(best.witness.size());
    }

    long nodes = 0;
    bool exhausted = true;
    std::vector<int> trail;  // edge ids whose state we set, for undo
    int in_count = 0;

    std::function<void(size_t)> dfs = [&](size_t pos) {
        if (++nodes > node_budget) {
            exhausted = false;
            return;
        }
        while (pos < order.size() && state[size_t(order[pos])] != UNDECIDED) ++pos;
        if (pos == order.size()) {
            if (in_count > best.value) {
                std::vector<Edge> w;
                for (int i = 0; i < m; ++i)
                    if (state[size_t(i)] == IN) w.push_back(edges[size_t(i)]);
                best.value = in_count;
                best.witness = make_flipset(std::move(w));
            }
            return;
        }
        // bound: every extra edge needs two fresh faces
        if (in_count + free_faces / 2 <= best.value) return;

        int e = order[pos];
        size_t mark = trail.size();

        // helper: set state with trail; IN checks face availability first
        auto set_state = [&](int id, int8_t st) -> bool {
            if (state[size_t(id)] == st) return true;
            if (state[size_t(id)] != UNDECIDED) return false;
            if (st == IN) {
                auto [f, g] = idx.incident_faces(edges[size_t(id)]);
                if (face_used[size_t(f)] || face_used[size_t(g)]) return false;
                face_used[size_t(f)] = face_used[size_t(g)] = 1;
                free_faces -= 2;
                ++in_count;
            }
            state[size_t(id)] = st;
            trail.push_back(id);
            return true;
        };
        auto undo_to = [&](size_t m0) {
            while (trail.size() > m0) {
                int id = trail.back();
                trail.pop_back();
                if (state[size_t(id)] == IN) {
                    auto [f, g] = idx.incident_faces(edges[size_t(id)]);
                    face_used[size_t(f)] = face_used[size_t(g)] = 0;
                    free_faces += 2;
                    --in_count;
                }
                state[size_t(id)] = UNDECIDED;
            }
        };

        // branch 1: include e (with its blocker chain and exclusions)
        {
            bool ok = true;
            std::vector<int> todo{e};
            while (ok && !todo.empty()) {
                int cur = todo.back();
                todo.pop_back();
                if (state[size_t(cur)] == IN) continue;
                if (!set_state(cur, IN)) {
                    ok = false;
                    break;
                }
                for (int cf : conflict[size_t(cur)]) {
                    if (state[size_t(cf)] == IN) {
                        ok = false;
                        break;
                    }
                    if (state[size_t(cf)] == UNDECIDED && !set_state(cf, OUT)) ok = false;
                    if (!ok) break;
                    // excluding a blocker kills everything it blocks
                    for (int dep : blocks[size_t(cf)])
                        if (state[size_t(dep)] == IN) ok = false;
                }
                if (ok && blocker[size_t(cur)] >= 0) {
                    int b = blocker[size_t(cur)];
                    if (state[size_t(b)] == OUT)
                        ok = false;
                    else if (state[size_t(b)] != IN)
                        todo.push_back(b);
                }
            }
            if (ok) dfs(pos + 1);
            undo_to(mark);
            if (nodes > node_budget) return;
        }

        // branch 2: exclude e and everything blocked only through it
        {
            bool ok = set_state(e, OUT);
            std::vector<int> todo = blocks[size_t(e)];
            while (ok && !todo.empty()) {
                int cur = todo.back();
                todo.pop_back();
                if (state[size_t(cur)] == IN) {
                    ok = false;
                    break;
                }
                if (state[size_t(cur)] == UNDECIDED) {
                    if (!set_state(cur, OUT)) {
                        ok = false;
                        break;
                    }
                    for (int dep : blocks[size_t(cur)]) todo.push_back(dep);
                }
            }
            if (ok) dfs(pos + 1);
            undo_to(mark);
        }
    };
    dfs(0);

    best.exact = exhausted;
    if (!best.witness.empty())
        ensure(brute_force_check(t, best.witness), "exact_max_flip: witness fails the oracle");
    ensure(best.value <= t.size() - 2, "exact_max_flip: value above the n-2 ceiling");
    return best;
}

std::pair<Triangulation, FlipSet> seven_family(const Triangulation& g0) {
    require(validate(g0).ok, "seven_family: invalid seed triangulation");
    int n0 = g0.size();
    std::vector<Face> base = faces(g0);
    std::vector<Face> out;
    std::vector<Edge> witness;
    int fresh = n0;
    for (const Face& f : base) {
        Vertex u = f.v[0], v = f.v[1], w = f.v[2];
        Vertex z = fresh++, x = fresh++, y = fresh++;
        out.push_back({u, v, z});
        out.push_back({v, w, x});
        out.push_back({w, u, y});
        out.push_back({v, x, z});
        out.push_back({w, y, x});
        out.push_back({u, z, y});
        out.push_back({z, x, y});
        witness.push_back(Edge(z, v));
        witness.push_back(Edge(x, w));
        witness.push_back(Edge(y, u));
    }
    int n = fresh;
    ensure(n - 2 == 7 * (n0 - 2), "seven_family: size arithmetic broke");
    Triangulation g = from_faces(n, out, 0);
    FlipSet s = make_flipset(std::move(witness));
    ensure(7 * int(s.size()) == 6 * (n - 2), "seven_family: witness size is not 6(n-2)/7");
    FlipCheck chk = check_flipset(g, s);
    ensure(chk.ok, "seven_family: witness is not flippable");
    return {std::move(g), std::move(s)};
}

FlipSet five_connected_max_flip(const Triangulation& t) {
    require(is_k_connected(t, 5), "five_connected_max_flip: triangulation is not 5-connected");
    FlipSet s = triangle_set(t);
    ensure(int(s.size()) == t.size() - 2, "five_connected_max_flip: cover size is not n-2");
    FlipCheck chk = check_flipset(t, s);
    ensure(chk.ok, "five_connected_max_flip: cover is not flippable");
    return s;
}

std::optional<Triangulation> find_five_connected(int n, uint64_t seed, int attempts) {
    require(n >= 12, "find_five_connected: need n >= 12");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Triangulation cur = generate_random(n, rng());
        auto score = [](const Triangulation& g) {
            int bad = int(separating_triangles(g).size());
            for (Vertex v = 0; v < g.size(); ++v) bad += g.degree(v) < 5;
            return bad;
        };
        int cur_score = score(cur);
        for (int step = 0; step < 400 && cur_score > 0; ++step) {
            std::vector<Edge> edges = cur.edges();
            Edge e = edges[rng_below(rng, edges.size())];
            EmbeddingIndex idx(cur);
            if (!is_individually_flippable(idx, e)) continue;
            auto [next, rec] = apply_flipset(cur, {e});
            (void)rec;
            int next_score = score(next);
            if (next_score <= cur_score) {
                cur = std::move(next);
                cur_score = next_score;
            }
        }
        if (cur_score == 0 && is_k_connected(cur, 5)) return cur;
    }
    return std::nullopt;
}

}  // namespace simflip
