#include "simflip/outerplane.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <fstream>
#include <map>
#include <sstream>

#include "simflip/coloring.hpp"
#include "simflip/generate.hpp"

namespace simflip {

int OuterplaneGraph::position_of(Vertex v) const {
    for (int i = 0; i < size(); ++i)
        if (boundary[size_t(i)] == v) return i;
    return -1;
}

bool OuterplaneGraph::is_boundary_edge(const Edge& e) const {
    int n = size();
    for (int i = 0; i < n; ++i) {
        Edge b(boundary[size_t(i)], boundary[size_t((i + 1) % n)]);
        if (b == e) return true;
    }
    return false;
}

bool OuterplaneGraph::has_chord(const Edge& e) const {
    return std::find(chords.begin(), chords.end(), e) != chords.end();
}

namespace {

struct PosIndex {
    int n = 0;
    std::unordered_map<Vertex, int> pos;
    std::vector<std::pair<int, int>> chord_pos;  // (i, j) with i < j

    explicit PosIndex(const OuterplaneGraph& o) : n(o.size()) {
        for (int i = 0; i < n; ++i) pos[o.boundary[size_t(i)]] = i;
        for (const Edge& e : o.chords) {
            int i = pos.at(e.u), j = pos.at(e.v);
            if (i > j) std::swap(i, j);
            chord_pos.push_back({i, j});
        }
    }
};

// Non-crossing check: opening/closing chords across the boundary walk must
// behave like balanced parentheses.
bool chords_noncrossing(int n, std::vector<std::pair<int, int>> cp) {
    std::vector<std::vector<int>> open(static_cast<size_t>(n)), close(static_cast<size_t>(n));
    for (int c = 0; c < int(cp.size()); ++c) {
        open[size_t(cp[size_t(c)].first)].push_back(c);
        close[size_t(cp[size_t(c)].second)].push_back(c);
    }
    for (int p = 0; p < n; ++p)
        std::sort(open[size_t(p)].begin(), open[size_t(p)].end(),
                  [&](int a, int b) { return cp[size_t(a)].second > cp[size_t(b)].second; });
    std::vector<int> stack;
    for (int p = 0; p < n; ++p) {
        std::sort(close[size_t(p)].begin(), close[size_t(p)].end(), [&](int a, int b) {
            return cp[size_t(a)].first > cp[size_t(b)].first;
        });
        for (int c : close[size_t(p)]) {
            if (stack.empty() || stack.back() != c) return false;
            stack.pop_back();
        }
        for (int c : open[size_t(p)]) stack.push_back(c);
    }
    return stack.empty();
}

// Internal faces as position triples, found by splitting boundary arcs at the
// unique apex adjacent to both arc ends.
std::vector<std::array<int, 3>> position_faces(int n,
                                               const std::vector<std::pair<int, int>>& cp) {
    std::unordered_set<uint64_t> edges;
    auto key = [](int i, int j) {
        if (i > j) std::swap(i, j);
        return (uint64_t(uint32_t(i)) << 32) | uint32_t(j);
    };
    std::vector<std::vector<int>> partners(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) edges.insert(key(i, (i + 1) % n));
    for (auto [i, j] : cp) {
        edges.insert(key(i, j));
        partners[size_t(i)].push_back(j);
        partners[size_t(j)].push_back(i);
    }

    std::vector<std::array<int, 3>> out;
    std::vector<std::pair<int, int>> arcs{{0, n - 1}};
    while (!arcs.empty()) {
        auto [i, j] = arcs.back();
        arcs.pop_back();
        if (j - i == 1) continue;
        int k = -1;
        if (edges.count(key(i + 1, j))) k = i + 1;
        if (k < 0 && edges.count(key(i, j - 1))) k = j - 1;
        if (k < 0)
            for (int p : partners[size_t(i)])
                if (p > i && p < j && edges.count(key(p, j))) {
                    k = p;
                    break;
                }
        ensure(k > i && k < j, "outerplane faces: no apex splits the arc");
        out.push_back({i, k, j});
        arcs.push_back({i, k});
        arcs.push_back({k, j});
    }
    return out;
}

}  // namespace

ValidationReport validate_outer(const OuterplaneGraph& o) {
    ValidationReport rep;
    int n = o.size();
    if (n < 3) {
        rep.fail("fewer than 3 boundary vertices");
        return rep;
    }
    std::unordered_set<Vertex> ids(o.boundary.begin(), o.boundary.end());
    if (int(ids.size()) != n) {
        rep.fail("boundary repeats a vertex");
        return rep;
    }
    PosIndex px(o);
    std::set<std::pair<int, int>> seen;
    for (size_t c = 0; c < o.chords.size(); ++c) {
        const Edge& e = o.chords[c];
        if (!ids.count(e.u) || !ids.count(e.v)) {
            rep.fail("chord endpoint off the boundary");
            return rep;
        }
        auto [i, j] = px.chord_pos[c];
        if (j - i == 1 || (i == 0 && j == n - 1)) rep.fail("chord duplicates a boundary edge");
        if (!seen.insert({i, j}).second) rep.fail("duplicate chord");
    }
    if (!rep.ok) return rep;
    if (int(o.chords.size()) != n - 3)
        rep.fail("chord count " + std::to_string(o.chords.size()) + " != n-3");
    if (!chords_noncrossing(n, px.chord_pos)) rep.fail("chords cross");
    return rep;
}

DualTree dual_tree(const OuterplaneGraph& o) {
    ValidationReport rep = validate_outer(o);
    require(rep.ok, "dual_tree: invalid outerplane graph: " +
                        (rep.violations.empty() ? "?" : rep.violations.front()));
    PosIndex px(o);
    DualTree d;
    for (const auto& f : position_faces(o.size(), px.chord_pos))
        d.faces.emplace_back(o.boundary[size_t(f[0])], o.boundary[size_t(f[1])],
                             o.boundary[size_t(f[2])]);
    d.adj.assign(d.faces.size(), {});

    std::unordered_map<Edge, std::vector<int>, EdgeHash> at_chord;
    std::unordered_set<Edge, EdgeHash> chord_set(o.chords.begin(), o.chords.end());
    for (int f = 0; f < d.node_count(); ++f) {
        const Triple& tr = d.faces[size_t(f)];
        for (int i = 0; i < 3; ++i) {
            Edge e(tr.v[size_t(i)], tr.v[size_t((i + 1) % 3)]);
            if (chord_set.count(e)) at_chord[e].push_back(f);
        }
    }
    for (auto& [e, fs] : at_chord) {
        ensure(fs.size() == 2, "dual_tree: chord not shared by two faces");
        d.adj[size_t(fs[0])].push_back(fs[1]);
        d.adj[size_t(fs[1])].push_back(fs[0]);
        d.chord_faces[e] = {fs[0], fs[1]};
    }
    ensure(d.node_count() == o.size() - 2, "dual_tree: face count is not n-2");
    ensure(d.max_degree() <= 3, "dual_tree: degree above three");
    return d;
}

int DualTree::max_degree() const {
    size_t m = 0;
    for (const auto& a : adj) m = std::max(m, a.size());
    return int(m);
}

std::vector<int> DualTree::distances_from(const std::vector<int>& sources) const {
    std::vector<int> dist(faces.size(), -1);
    std::vector<int> q;
    for (int s : sources) {
        dist[size_t(s)] = 0;
        q.push_back(s);
    }
    for (size_t qi = 0; qi < q.size(); ++qi)
        for (int g : adj[size_t(q[qi])])
            if (dist[size_t(g)] < 0) {
                dist[size_t(g)] = dist[size_t(q[qi])] + 1;
                q.push_back(g);
            }
    return dist;
}

int DualTree::diameter() const {
    if (faces.empty()) return 0;
    auto d0 = distances_from({0});
    int far = int(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto d1 = distances_from({far});
    return *std::max_element(d1.begin(), d1.end());
}

OuterFlipCheck check_outer_flipset(const OuterplaneGraph& o, const FlipSet& s) {
    OuterFlipCheck res;
    DualTree d = dual_tree(o);
    std::unordered_map<int, std::vector<Edge>> per_face;
    for (const Edge& e : s) {
        auto it = d.chord_faces.find(e);
        if (it == d.chord_faces.end()) {
            res.violations.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                     (o.is_boundary_edge(e) ? " is a boundary edge"
                                                            : " is not an internal edge"));
            continue;
        }
        per_face[it->second.first].push_back(e);
        per_face[it->second.second].push_back(e);
    }
    for (auto& [f, members] : per_face)
        if (members.size() > 1)
            res.violations.push_back("two flipped chords share a face (dual edges not a matching)");
    res.ok = res.violations.empty();
    return res;
}

std::pair<OuterplaneGraph, OuterFlipRecord> apply_outer_flipset(const OuterplaneGraph& o,
                                                                const FlipSet& s) {
    OuterFlipCheck chk = check_outer_flipset(o, s);
    if (!chk.ok)
        throw domain_error("apply_outer_flipset: " +
                           (chk.violations.empty() ? "bad set" : chk.violations.front()));
    DualTree d = dual_tree(o);
    OuterFlipRecord rec;
    std::unordered_map<Edge, Edge, EdgeHash> replace;
    for (const Edge& e : s) {
        auto [f, g] = d.chord_faces.at(e);
        Vertex x = -1, y = -1;
        for (Vertex w : d.faces[size_t(f)].v)
            if (!e.touches(w)) x = w;
        for (Vertex w : d.faces[size_t(g)].v)
            if (!e.touches(w)) y = w;
        ensure(x >= 0 && y >= 0 && x != y, "apply_outer_flipset: degenerate quad");
        replace[e] = Edge(x, y);
        rec.quads.push_back({e, Edge(x, y)});
    }
    OuterplaneGraph out = o;
    for (Edge& c : out.chords) {
        auto it = replace.find(c);
        if (it != replace.end()) c = it->second;
    }
    std::sort(out.chords.begin(), out.chords.end());
    std::sort(rec.quads.begin(), rec.quads.end(),
              [](const FlipQuad& a, const FlipQuad& b) { return a.removed < b.removed; });
    ValidationReport rep = validate_outer(out);
    ensure(rep.ok, "apply_outer_flipset: result invalid");
    return {std::move(out), std::move(rec)};
}

FlipSet max_outer_flip(const OuterplaneGraph& o) {
    require(o.size() >= 4, "max_outer_flip: need n >= 4");
    DualTree d = dual_tree(o);
    std::vector<std::pair<int, int>> tree_edges;
    std::vector<Edge> tree_edge_chord;
    for (const auto& [e, fg] : d.chord_faces) {
        tree_edges.push_back(fg);
        tree_edge_chord.push_back(e);
    }
    std::vector<int> color = tree_edge_three_coloring(d.node_count(), tree_edges);
    std::array<std::vector<Edge>, 3> classes;
    for (size_t i = 0; i < tree_edges.size(); ++i)
        classes[size_t(color[i])].push_back(tree_edge_chord[i]);
    auto best = std::max_element(classes.begin(), classes.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
    FlipSet s = make_flipset(std::move(*best));
    ensure(3 * int(s.size()) >= o.size() - 3, "max_outer_flip: class below (n-3)/3");
    ensure(check_outer_flipset(o, s).ok, "max_outer_flip: class not flippable");
    return s;
}

OuterplaneGraph tight_tree_family(int depth) {
    require(depth >= 1 && depth % 2 == 1, "tight_tree_family: depth must be odd and >= 1");

    // Dual-tree shape: root of degree three; two of its children are leaves
    // (for depth > 1); below that full binary branching down to odd depth.
    struct Node {
        int level;
        std::vector<int> kids;
    };
    std::vector<Node> tree;
    tree.push_back({0, {}});
    std::vector<int> frontier;  // internal nodes still needing children
    auto add_child = [&](int parent) {
        tree.push_back({tree[size_t(parent)].level + 1, {}});
        tree[size_t(parent)].kids.push_back(int(tree.size()) - 1);
        return int(tree.size()) - 1;
    };
    if (depth == 1) {
        for (int i = 0; i < 3; ++i) add_child(0);
    } else {
        add_child(0);
        add_child(0);
        frontier.push_back(add_child(0));
        while (!frontier.empty()) {
            int t = frontier.back();
            frontier.pop_back();
            int c1 = add_child(t), c2 = add_child(t);
            if (tree[size_t(c1)].level < depth) {
                frontier.push_back(c1);
                frontier.push_back(c2);
            }
        }
    }

    // Geometric realisation by ear attachment: gluing a child across a
    // boundary edge turns that edge into a chord.
    std::unordered_map<Vertex, Vertex> succ;
    succ[0] = 1;
    succ[1] = 2;
    succ[2] = 0;
    std::vector<Edge> chords;
    int fresh = 3;

    struct Pending {
        int node;
        std::vector<Edge> free_edges;
    };
    std::vector<Pending> stack{{0, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}}};
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        const auto& kids = tree[size_t(cur.node)].kids;
        ensure(kids.size() <= cur.free_edges.size(), "tight_tree_family: too many children");
        for (size_t i = 0; i < kids.size(); ++i) {
            Edge host = cur.free_edges[i];
            Vertex u = host.u, v = host.v;
            if (succ.at(v) == u) std::swap(u, v);
            ensure(succ.at(u) == v, "tight_tree_family: host edge not on the boundary");
            Vertex w = fresh++;
            succ[u] = w;
            succ[w] = v;
            chords.push_back(host);
            stack.push_back({kids[i], {Edge(u, w), Edge(w, v)}});
        }
    }

    OuterplaneGraph o;
    Vertex cur = 0;
    do {
        o.boundary.push_back(cur);
        cur = succ.at(cur);
    } while (cur != 0);
    o.chords = make_flipset(std::move(chords));
    ValidationReport rep = validate_outer(o);
    ensure(rep.ok, "tight_tree_family: construction invalid");
    ensure(o.size() == int(tree.size()) + 2, "tight_tree_family: size mismatch");
    return o;
}

LowDegreeIndependentSet low_degree_independent_set(const OuterplaneGraph& o) {
    require(o.size() >= 4, "low_degree_independent_set: need n >= 4");
    int n = o.size();
    DualTree d = dual_tree(o);

    std::unordered_map<Vertex, int> deg;
    for (int i = 0; i < n; ++i) deg[o.boundary[size_t(i)]] = 2;
    for (const Edge& e : o.chords) {
        ++deg[e.u];
        ++deg[e.v];
    }
    auto eligible = [&](Vertex v) { return deg.at(v) <= 4; };

    // Root the dual tree and DP over (chosen?) states of each face's parent
    // edge endpoints. neg = impossible.
    constexpr int NEG = -1000000;
    int fcount = d.node_count();
    std::vector<int> parent(static_cast<size_t>(fcount), -1);
    std::vector<int> order;  // BFS order
    std::vector<char> seen(static_cast<size_t>(fcount), 0);
    order.push_back(0);
    seen[0] = 1;
    for (size_t qi = 0; qi < order.size(); ++qi)
        for (int g : d.adj[size_t(order[qi])])
            if (!seen[size_t(g)]) {
                seen[size_t(g)] = 1;
                parent[size_t(g)] = order[qi];
                order.push_back(g);
            }

    // pair -> chord map for parent-edge lookups
    std::map<std::pair<int, int>, Edge> pair_chord;
    for (const auto& [e, fg] : d.chord_faces)
        pair_chord[{std::min(fg.first, fg.second), std::max(fg.first, fg.second)}] = e;

    // parent edge (pe_a < pe_b) of a non-root face, and its free third vertex
    std::vector<Vertex> pe_a(static_cast<size_t>(fcount), -1),
        pe_b(static_cast<size_t>(fcount), -1), third(static_cast<size_t>(fcount), -1);
    for (int f : order) {
        if (parent[size_t(f)] < 0) continue;
        Edge shared_edge =
            pair_chord.at({std::min(f, parent[size_t(f)]), std::max(f, parent[size_t(f)])});
        pe_a[size_t(f)] = shared_edge.u;
        pe_b[size_t(f)] = shared_edge.v;
        for (Vertex w : d.faces[size_t(f)].v)
            if (w != shared_edge.u && w != shared_edge.v) third[size_t(f)] = w;
    }

    // children of f keyed by the edge they hang on
    std::vector<std::vector<int>> kids(static_cast<size_t>(fcount));
    for (int f : order)
        if (parent[size_t(f)] >= 0) kids[size_t(parent[size_t(f)])].push_back(f);
    auto child_on = [&](int f, Vertex x, Vertex y) -> int {
        for (int c : kids[size_t(f)])
            if (Edge(pe_a[size_t(c)], pe_b[size_t(c)]) == Edge(x, y)) return c;
        return -1;
    };

    // dp[f][sa][sb]: best count of chosen vertices strictly inside the region
    // of f (including its third vertex) given the states of pe_a/pe_b. States
    // are always keyed by vertex identity, never by traversal order.
    std::vector<std::array<std::array<int, 2>, 2>> dp(static_cast<size_t>(fcount));
    std::vector<std::array<std::array<int, 2>, 2>> pick(static_cast<size_t>(fcount));

    auto get = [&](int f, Vertex x, int sx, Vertex y, int sy) -> int {
        if (f < 0) return 0;
        if (sx && sy) return NEG;
        if (pe_a[size_t(f)] == x && pe_b[size_t(f)] == y) return dp[size_t(f)][size_t(sx)][size_t(sy)];
        ensure(pe_a[size_t(f)] == y && pe_b[size_t(f)] == x,
               "low_degree_independent_set: child edge mismatch");
        return dp[size_t(f)][size_t(sy)][size_t(sx)];
    };

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it;
        if (parent[size_t(f)] < 0) continue;
        Vertex a = pe_a[size_t(f)], b = pe_b[size_t(f)], r = third[size_t(f)];
        for (int sa = 0; sa <= 1; ++sa)
            for (int sb = 0; sb <= 1; ++sb) {
                int best = NEG, best_sr = 0;
                if (!(sa && sb)) {
                    for (int sr = 0; sr <= 1; ++sr) {
                        if (sr && (!eligible(r) || sa || sb)) continue;
                        int left = get(child_on(f, a, r), a, sa, r, sr);
                        int right = get(child_on(f, r, b), r, sr, b, sb);
                        if (left <= NEG || right <= NEG) continue;
                        int total = sr + left + right;
                        if (total > best) {
                            best = total;
                            best_sr = sr;
                        }
                    }
                }
                dp[size_t(f)][size_t(sa)][size_t(sb)] = best;
                pick[size_t(f)][size_t(sa)][size_t(sb)] = best_sr;
            }
    }

    // root face: enumerate all admissible states of its three vertices
    const Triple& rt = d.faces[0];
    Vertex ra = rt.v[0], rb = rt.v[1], rc = rt.v[2];
    int best = NEG;
    std::array<int, 3> best_state{0, 0, 0};
    for (int sa = 0; sa <= 1; ++sa)
        for (int sb = 0; sb <= 1; ++sb)
            for (int sc = 0; sc <= 1; ++sc) {
                if (sa + sb + sc > 1) continue;  // mutually adjacent
                if ((sa && !eligible(ra)) || (sb && !eligible(rb)) || (sc && !eligible(rc)))
                    continue;
                int t1 = get(child_on(0, ra, rb), ra, sa, rb, sb);
                int t2 = get(child_on(0, rb, rc), rb, sb, rc, sc);
                int t3 = get(child_on(0, rc, ra), rc, sc, ra, sa);
                if (t1 <= NEG || t2 <= NEG || t3 <= NEG) continue;
                int total = sa + sb + sc + t1 + t2 + t3;
                if (total > best) {
                    best = total;
                    best_state = {sa, sb, sc};
                }
            }
    ensure(best > NEG, "low_degree_independent_set: dp failed");

    // reconstruct
    std::vector<Vertex> members;
    if (best_state[0]) members.push_back(ra);
    if (best_state[1]) members.push_back(rb);
    if (best_state[2]) members.push_back(rc);
    struct Walk {
        int f;
        int sa, sb;  // states of this node's pe_a and pe_b
    };
    std::vector<Walk> wstack;
    auto push_child = [&](int c, Vertex x, int sx, Vertex y, int sy) {
        if (c < 0) return;
        if (pe_a[size_t(c)] == x)
            wstack.push_back({c, sx, sy});
        else
            wstack.push_back({c, sy, sx});
    };
    push_child(child_on(0, ra, rb), ra, best_state[0], rb, best_state[1]);
    push_child(child_on(0, rb, rc), rb, best_state[1], rc, best_state[2]);
    push_child(child_on(0, rc, ra), rc, best_state[2], ra, best_state[0]);
    while (!wstack.empty()) {
        auto [f, sa, sb] = wstack.back();
        wstack.pop_back();
        int sr = pick[size_t(f)][size_t(sa)][size_t(sb)];
        Vertex a = pe_a[size_t(f)], b = pe_b[size_t(f)], r = third[size_t(f)];
        if (sr) members.push_back(r);
        push_child(child_on(f, a, r), a, sa, r, sr);
        push_child(child_on(f, r, b), r, sr, b, sb);
    }

    LowDegreeIndependentSet res;
    res.members = members;
    std::sort(res.members.begin(), res.members.end());
    for (Vertex v : res.members) {
        int dv = deg.at(v);
        ensure(dv >= 2 && dv <= 4, "low_degree_independent_set: member degree out of range");
        res.by_degree[size_t(dv - 2)].push_back(v);
    }
    // independence and the n/6 guarantee
    std::unordered_set<Vertex> in(res.members.begin(), res.members.end());
    std::unordered_map<Vertex, int> bpos;
    for (int i = 0; i < n; ++i) bpos[o.boundary[size_t(i)]] = i;
    for (Vertex v : res.members) {
        int i = bpos.at(v);
        ensure(!in.count(o.boundary[size_t((i + 1) % n)]) &&
                   !in.count(o.boundary[size_t((i + n - 1) % n)]),
               "low_degree_independent_set: boundary neighbours both chosen");
    }
    for (const Edge& e : o.chords)
        ensure(!(in.count(e.u) && in.count(e.v)),
               "low_degree_independent_set: chord endpoints both chosen");
    ensure(6 * int(res.members.size()) >= n, "low_degree_independent_set: below n/6");
    return res;
}

double outerplane_c1() { return 2.0 / std::log2(6.0 / 5.0); }

namespace {

// Active-subset view used by the shrink rounds of reduce_diameter: boundary
// restricted to `active`, chords that stay strictly internal.
OuterplaneGraph induce_active(const OuterplaneGraph& o, const std::unordered_set<Vertex>& active) {
    OuterplaneGraph sub;
    for (Vertex v : o.boundary)
        if (active.count(v)) sub.boundary.push_back(v);
    int m = int(sub.boundary.size());
    std::unordered_map<Vertex, int> pos;
    for (int i = 0; i < m; ++i) pos[sub.boundary[size_t(i)]] = i;
    for (const Edge& e : o.chords) {
        auto iu = pos.find(e.u), iv = pos.find(e.v);
        if (iu == pos.end() || iv == pos.end()) continue;
        int di = std::abs(iu->second - iv->second);
        if (di == 1 || di == m - 1) continue;  // became a boundary edge
        sub.chords.push_back(e);
    }
    std::sort(sub.chords.begin(), sub.chords.end());
    ValidationReport rep = validate_outer(sub);
    ensure(rep.ok, "reduce_diameter: active subgraph is not maximal outerplane");
    return sub;
}

Edge any_chord_at(const OuterplaneGraph& o, Vertex v) {
    for (const Edge& e : o.chords)
        if (e.touches(v)) return e;
    throw postcondition_error("expected an internal chord at vertex " + std::to_string(v));
}

}  // namespace

std::pair<OuterSequence, OuterplaneGraph> reduce_diameter(const OuterplaneGraph& o) {
    ValidationReport rep = validate_outer(o);
    require(rep.ok, "reduce_diameter: invalid input");
    int n0 = o.size();
    double bound = outerplane_c1() * std::log2(std::max(2, n0));

    OuterSequence steps;
    OuterplaneGraph cur = o;
    std::unordered_set<Vertex> active(o.boundary.begin(), o.boundary.end());

    while (int(active.size()) > 4) {
        OuterplaneGraph sub = induce_active(cur, active);
        LowDegreeIndependentSet low = low_degree_independent_set(sub);

        // one chord at each member of degree three or four
        std::vector<Edge> first;
        for (int dcls : {1, 2})
            for (Vertex v : low.by_degree[size_t(dcls)]) first.push_back(any_chord_at(sub, v));
        if (!first.empty()) {
            FlipSet s = make_flipset(std::move(first));
            ensure(check_outer_flipset(sub, s).ok, "reduce_diameter: first round set invalid");
            auto [next, rec] = apply_outer_flipset(cur, s);
            cur = std::move(next);
            steps.push_back(std::move(rec));
        }

        // former degree-4 members now hold one chord; clear them too
        OuterplaneGraph sub2 = induce_active(cur, active);
        std::vector<Edge> second;
        for (Vertex v : low.by_degree[2]) {
            Edge c = any_chord_at(sub2, v);
            second.push_back(c);
        }
        if (!second.empty()) {
            FlipSet s = make_flipset(std::move(second));
            ensure(check_outer_flipset(sub2, s).ok, "reduce_diameter: second round set invalid");
            auto [next, rec] = apply_outer_flipset(cur, s);
            cur = std::move(next);
            steps.push_back(std::move(rec));
        }

        // every degree-2 vertex of the active graph is an ear; deleting them
        // adds leaves to the dual tree of the remainder
        OuterplaneGraph sub3 = induce_active(cur, active);
        std::unordered_map<Vertex, int> deg;
        for (Vertex v : sub3.boundary) deg[v] = 2;
        for (const Edge& e : sub3.chords) {
            ++deg[e.u];
            ++deg[e.v];
        }
        std::vector<Vertex> ears;
        for (Vertex v : sub3.boundary)
            if (deg.at(v) == 2) ears.push_back(v);
        ensure(6 * int(ears.size()) >= int(active.size()),
               "reduce_diameter: fewer ears than the independent set guarantees");
        for (Vertex v : ears) active.erase(v);
    }

    ensure(double(steps.size()) <= bound, "reduce_diameter: step count exceeds c1*log2(n)");
    ensure(double(dual_tree(cur).diameter()) <= bound,
           "reduce_diameter: final diameter exceeds c1*log2(n)");
    return {std::move(steps), std::move(cur)};
}

std::pair<OuterSequence, OuterplaneGraph> make_dominant(const OuterplaneGraph& o, Vertex v) {
    require(o.position_of(v) >= 0, "make_dominant: vertex not in graph");
    OuterSequence steps;
    OuterplaneGraph cur = o;
    int n = o.size();
    int k = dual_tree(o).diameter();

    while (true) {
        DualTree d = dual_tree(cur);
        std::vector<int> pstar;
        for (int f = 0; f < d.node_count(); ++f)
            if (d.faces[size_t(f)].contains(v)) pstar.push_back(f);
        if (int(pstar.size()) == n - 2) break;  // v dominant

        // the faces at v form a path in the dual tree
        int ends = 0;
        for (int f : pstar) {
            int inside = 0;
            for (int g : d.adj[size_t(f)])
                if (d.faces[size_t(g)].contains(v)) ++inside;
            ensure(inside <= 2, "make_dominant: face path branches");
            if (inside <= 1) ++ends;
        }
        ensure(ends <= 2, "make_dominant: faces at v are not a path");

        std::map<std::pair<int, int>, Edge> pair_chord;
        for (const auto& [e, fg] : d.chord_faces)
            pair_chord[{std::min(fg.first, fg.second), std::max(fg.first, fg.second)}] = e;

        std::vector<int> dist = d.distances_from(pstar);
        std::vector<Edge> flip;
        for (int f : pstar)
            for (int g : d.adj[size_t(f)]) {
                if (d.faces[size_t(g)].contains(v)) continue;
                // the shared chord is seen by v from face f
                flip.push_back(pair_chord.at({std::min(f, g), std::max(f, g)}));
            }
        ensure(!flip.empty(), "make_dominant: no progress available");
        FlipSet s = make_flipset(std::move(flip));
        for (const Edge& e : s) ensure(!e.touches(v), "make_dominant: flipping an edge at v");
        auto [next, rec] = apply_outer_flipset(cur, s);

        // persistent faces away from the path move one step closer
        DualTree d2 = dual_tree(next);
        std::vector<int> pstar2;
        for (int f = 0; f < d2.node_count(); ++f)
            if (d2.faces[size_t(f)].contains(v)) pstar2.push_back(f);
        std::vector<int> dist2 = d2.distances_from(pstar2);
        std::unordered_map<Triple, int, TripleHash> new_dist;
        for (int f = 0; f < d2.node_count(); ++f) new_dist[d2.faces[size_t(f)]] = dist2[size_t(f)];
        for (int f = 0; f < d.node_count(); ++f) {
            if (dist[size_t(f)] < 2) continue;
            auto it = new_dist.find(d.faces[size_t(f)]);
            ensure(it != new_dist.end(), "make_dominant: distant face was destroyed");
            ensure(it->second <= dist[size_t(f)] - 1, "make_dominant: distance did not drop");
        }

        cur = std::move(next);
        steps.push_back(std::move(rec));
        ensure(int(steps.size()) <= std::max(k, 1), "make_dominant: more steps than the diameter");
    }
    return {std::move(steps), std::move(cur)};
}

DominantResult make_outerplane_dominant(const OuterplaneGraph& o) {
    auto [steps, reduced] = reduce_diameter(o);
    DualTree d = dual_tree(reduced);

    // candidate minimising the eccentricity of its face path
    Vertex best = -1;
    int best_ecc = 1 << 30;
    for (Vertex v : reduced.boundary) {
        std::vector<int> pstar;
        for (int f = 0; f < d.node_count(); ++f)
            if (d.faces[size_t(f)].contains(v)) pstar.push_back(f);
        auto dist = d.distances_from(pstar);
        int ecc = *std::max_element(dist.begin(), dist.end());
        if (ecc < best_ecc || (ecc == best_ecc && v < best)) {
            best_ecc = ecc;
            best = v;
        }
    }
    auto [steps2, dom] = make_dominant(reduced, best);
    DominantResult res;
    res.steps = std::move(steps);
    for (auto& s : steps2) res.steps.push_back(std::move(s));
    res.graph = std::move(dom);
    res.dominant = best;
    return res;
}

bool outer_isomorphic(const OuterplaneGraph& a, const OuterplaneGraph& b, bool allow_reflection) {
    int n = a.size();
    if (b.size() != n || a.chords.size() != b.chords.size()) return false;
    PosIndex pa(a), pb(b);
    std::set<std::pair<int, int>> aset(pa.chord_pos.begin(), pa.chord_pos.end());
    auto norm = [n](int i, int j) {
        if (i > j) std::swap(i, j);
        return std::pair<int, int>(i, j);
    };
    for (int mirror = 0; mirror < (allow_reflection ? 2 : 1); ++mirror) {
        for (int rot = 0; rot < n; ++rot) {
            bool ok = true;
            for (auto [i, j] : pb.chord_pos) {
                int pi = mirror ? (n - i) % n : i;
                int pj = mirror ? (n - j) % n : j;
                if (!aset.count(norm((pi + rot) % n, (pj + rot) % n))) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

std::pair<OuterSequence, OuterplaneGraph> outer_morph(const OuterplaneGraph& o1,
                                                      const OuterplaneGraph& o2) {
    require(o1.size() == o2.size(), "outer_morph: size mismatch");
    int n = o1.size();
    require(validate_outer(o1).ok && validate_outer(o2).ok, "outer_morph: invalid input");

    DominantResult d1 = make_outerplane_dominant(o1);
    DominantResult d2 = make_outerplane_dominant(o2);

    // align the two fans: dominant to dominant, rims in boundary order
    std::unordered_map<Vertex, Vertex> phi;
    int p1 = d1.graph.position_of(d1.dominant);
    int p2 = d2.graph.position_of(d2.dominant);
    for (int i = 0; i < n; ++i)
        phi[d2.graph.boundary[size_t((p2 + i) % n)]] = d1.graph.boundary[size_t((p1 + i) % n)];

    OuterSequence seq = d1.steps;
    OuterplaneGraph cur = d1.graph;
    for (auto it = d2.steps.rbegin(); it != d2.steps.rend(); ++it) {
        std::vector<Edge> back;
        for (const FlipQuad& q : it->quads)
            back.push_back(Edge(phi.at(q.inserted.u), phi.at(q.inserted.v)));
        auto [next, rec] = apply_outer_flipset(cur, make_flipset(std::move(back)));
        cur = std::move(next);
        seq.push_back(std::move(rec));
    }
    ensure(outer_isomorphic(cur, o2), "outer_morph: endpoint not isomorphic to the target");
    double bound = 4.0 * outerplane_c1() * std::log2(std::max(2, n));
    ensure(double(seq.size()) <= bound, "outer_morph: more than 4*c1*log2(n) steps");
    return {std::move(seq), std::move(cur)};
}

OuterplaneGraph fan(int n) {
    require(n >= 3, "fan: need n >= 3");
    OuterplaneGraph o;
    for (Vertex v = 0; v < n; ++v) o.boundary.push_back(v);
    for (Vertex v = 2; v < n - 1; ++v) o.chords.push_back(Edge(0, v));
    return o;
}

OuterplaneGraph zigzag(int n) {
    require(n >= 3, "zigzag: need n >= 3");
    OuterplaneGraph o;
    for (Vertex v = 0; v < n; ++v) o.boundary.push_back(v);
    int a = 0, b = n - 1;
    bool left = true;
    while (b - a > 2) {
        if (left)
            o.chords.push_back(Edge(a + 1, b)), ++a;
        else
            o.chords.push_back(Edge(a, b - 1)), --b;
        left = !left;
    }
    std::sort(o.chords.begin(), o.chords.end());
    ValidationReport rep = validate_outer(o);
    ensure(rep.ok, "zigzag: invalid construction");
    return o;
}

OuterplaneGraph random_outerplane(int n, uint64_t seed) {
    require(n >= 3, "random_outerplane: need n >= 3");
    std::mt19937_64 rng(seed);
    OuterplaneGraph o;
    for (Vertex v = 0; v < n; ++v) o.boundary.push_back(v);
    std::vector<std::pair<int, int>> arcs{{0, n - 1}};
    while (!arcs.empty()) {
        auto [i, j] = arcs.back();
        arcs.pop_back();
        if (j - i <= 1) continue;
        int k = i + 1 + int(rng_below(rng, uint64_t(j - i - 1)));
        if (k - i >= 2) o.chords.push_back(Edge(i, k));
        if (j - k >= 2) o.chords.push_back(Edge(k, j));
        arcs.push_back({i, k});
        arcs.push_back({k, j});
    }
    // (0, n-1) is a boundary edge, never a chord
    std::sort(o.chords.begin(), o.chords.end());
    ValidationReport rep = validate_outer(o);
    ensure(rep.ok, "random_outerplane: invalid construction");
    return o;
}

std::vector<OuterplaneGraph> all_polygon_triangulations(int n) {
    require(n >= 3, "all_polygon_triangulations: need n >= 3");
    // chordsets(i, j): all triangulations of the arc i..j (edge (i,j) assumed)
    std::function<std::vector<std::vector<Edge>>(int, int)> arcs = [&](int i,
                                                                       int j) {
        std::vector<std::vector<Edge>> out;
        if (j - i <= 1) return std::vector<std::vector<Edge>>{{}};
        for (int k = i + 1; k < j; ++k) {
            auto left = arcs(i, k);
            auto right = arcs(k, j);
            for (const auto& l : left)
                for (const auto& r : right) {
                    std::vector<Edge> cs = l;
                    cs.insert(cs.end(), r.begin(), r.end());
                    if (k - i >= 2) cs.push_back(Edge(i, k));
                    if (j - k >= 2) cs.push_back(Edge(k, j));
                    out.push_back(std::move(cs));
                }
        }
        return out;
    };
    std::vector<OuterplaneGraph> res;
    for (auto& cs : arcs(0, n - 1)) {
        OuterplaneGraph o;
        for (Vertex v = 0; v < n; ++v) o.boundary.push_back(v);
        o.chords = make_flipset(std::move(cs));
        res.push_back(std::move(o));
    }
    return res;
}

OuterplaneGraph parse_outer(std::istream& in) {
    std::string line;
    int n = -1;
    OuterplaneGraph o;
    bool have_boundary = false;
    auto strip = [](std::string s) {
        auto p = s.find('#');
        if (p != std::string::npos) s = s.substr(0, p);
        return s;
    };
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string head;
            ls >> head;
            require(head == "n", ".outer: first line must be `n <count>`");
            require(bool(ls >> n) && n >= 3, ".outer: bad count");
            continue;
        }
        if (!have_boundary) {
            Vertex v;
            while (ls >> v) o.boundary.push_back(v);
            require(int(o.boundary.size()) == n, ".outer: boundary line must list all n vertices");
            std::vector<char> hit(static_cast<size_t>(n), 0);
            for (Vertex w : o.boundary) {
                require(w >= 0 && w < n && !hit[size_t(w)], ".outer: boundary must be a permutation");
                hit[size_t(w)] = 1;
            }
            have_boundary = true;
            continue;
        }
        Vertex u, v;
        require(bool(ls >> u >> v), ".outer: bad chord line");
        o.chords.push_back(Edge(u, v));
    }
    require(have_boundary, ".outer: missing boundary");
    o.chords = make_flipset(std::move(o.chords));
    ValidationReport rep = validate_outer(o);
    if (!rep.ok) throw domain_error(".outer: invalid graph: " + rep.violations.front());
    return o;
}

OuterplaneGraph parse_outer_string(const std::string& text) {
    std::istringstream in(text);
    return parse_outer(in);
}

OuterplaneGraph load_outer(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), "cannot open " + path);
    return parse_outer(in);
}

std::string serialize_outer(const OuterplaneGraph& o) {
    std::ostringstream out;
    out << "n " << o.size() << "\n";
    for (int i = 0; i < o.size(); ++i) out << (i ? " " : "") << o.boundary[size_t(i)];
    out << "\n";
    for (const Edge& e : o.chords) out << e.u << " " << e.v << "\n";
    return out.str();
}

void save_outer(const OuterplaneGraph& o, const std::string& path) {
    std::ofstream out(path);
    require(bool(out), "cannot write " + path);
    out << serialize_outer(o);
}

Triangulation apex_triangulation(const OuterplaneGraph& o) {
    ValidationReport rep = validate_outer(o);
    require(rep.ok, "apex_triangulation: invalid outerplane graph");
    int n = o.size();
    for (Vertex v : o.boundary) require(v >= 0 && v < n, "apex_triangulation: ids must be 0..n-1");

    PosIndex px(o);
    std::vector<std::vector<Vertex>> rot(static_cast<size_t>(n) + 1);
    std::vector<std::vector<Vertex>> chords_at(static_cast<size_t>(n));
    for (const Edge& e : o.chords) {
        chords_at[size_t(e.u)].push_back(e.v);
        chords_at[size_t(e.v)].push_back(e.u);
    }
    Vertex apex = n;
    for (int i = 0; i < n; ++i) {
        Vertex v = o.boundary[size_t(i)];
        Vertex nx = o.boundary[size_t((i + 1) % n)];
        Vertex pv = o.boundary[size_t((i + n - 1) % n)];
        auto dist = [&](Vertex u) { return (px.pos.at(u) - i + n) % n; };
        std::sort(chords_at[size_t(v)].begin(), chords_at[size_t(v)].end(),
                  [&](Vertex x, Vertex y) { return dist(x) < dist(y); });
        rot[size_t(v)].push_back(nx);
        for (Vertex u : chords_at[size_t(v)]) rot[size_t(v)].push_back(u);
        rot[size_t(v)].push_back(pv);
        rot[size_t(v)].push_back(apex);
    }
    for (int i = n - 1; i >= 0; --i) rot[size_t(apex)].push_back(o.boundary[size_t(i)]);

    auto t = triangulation_from_rotations(rot);
    if (!t) {
        // apex orientation depends on the boundary direction; try the mirror
        std::reverse(rot[size_t(apex)].begin(), rot[size_t(apex)].end());
        t = triangulation_from_rotations(rot);
    }
    ensure(t.has_value(), "apex_triangulation: could not embed");
    return *t;
}

}  // namespace simflip
