#include "simflip/morph.hpp"

#include <algorithm>
#include <map>
#include <cmath>

#include "simflip/canonical.hpp"
#include "simflip/coloring.hpp"
#include "simflip/cover.hpp"
#include "simflip/hamiltonian.hpp"

namespace simflip {

double morph_c1() { return 2.0 / std::log2(6.0 / 5.0); }
double morph_c2() { return 2.0 / std::log2(54.0 / 53.0); }

CycleChords classify_chords(const Triangulation& g, const std::vector<Vertex>& cycle) {
    int m = int(cycle.size());
    require(m >= 3, "classify_chords: cycle too short");
    std::unordered_map<Vertex, int> cpos;
    for (int i = 0; i < m; ++i) {
        require(!cpos.count(cycle[size_t(i)]), "classify_chords: repeated cycle vertex");
        cpos[cycle[size_t(i)]] = i;
    }
    for (int i = 0; i < m; ++i)
        require(g.adjacent(cycle[size_t(i)], cycle[size_t((i + 1) % m)]),
                "classify_chords: consecutive cycle vertices not adjacent");

    EmbeddingIndex idx(g);
    std::unordered_set<Edge, EdgeHash> cycle_edges;
    for (int i = 0; i < m; ++i)
        cycle_edges.insert(Edge(cycle[size_t(i)], cycle[size_t((i + 1) % m)]));

    // 2-colour the faces by flooding without crossing cycle edges
    std::vector<int> side(idx.faces().size(), -1);
    auto flood = [&](int start, int colour) {
        std::vector<int> stack{start};
        side[size_t(start)] = colour;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            const Face& fc = idx.faces()[size_t(f)];
            for (int i = 0; i < 3; ++i) {
                Vertex a = fc.v[size_t(i)], b = fc.v[size_t((i + 1) % 3)];
                if (cycle_edges.count(Edge(a, b))) continue;
                int g2 = idx.face_left_of(b, a);
                if (side[size_t(g2)] < 0) {
                    side[size_t(g2)] = colour;
                    stack.push_back(g2);
                }
            }
        }
    };
    flood(idx.face_left_of(cycle[0], cycle[1]), 0);
    int other = -1;
    for (int f = 0; f < int(side.size()); ++f)
        if (side[size_t(f)] < 0) {
            other = f;
            break;
        }
    ensure(other >= 0, "classify_chords: cycle does not separate the faces");
    flood(other, 1);
    for (int s : side) ensure(s >= 0, "classify_chords: more than two face regions");

    // The interior is the vertex-free side. A Hamiltonian cycle is bare on
    // both sides; there the side away from the outerface counts as interior.
    std::vector<char> on_cycle(static_cast<size_t>(g.size()), 0);
    for (Vertex v : cycle) on_cycle[size_t(v)] = 1;
    std::array<bool, 2> bare{true, true};
    for (int f = 0; f < int(side.size()); ++f)
        for (Vertex v : idx.faces()[size_t(f)].v)
            if (!on_cycle[size_t(v)]) bare[size_t(side[size_t(f)])] = false;
    require(bare[0] || bare[1], "classify_chords: cycle is not empty");
    int exterior;
    if (bare[0] && bare[1]) {
        int outer_face = idx.face_index_of(g.outerface().normalized());
        ensure(outer_face >= 0, "classify_chords: outerface missing");
        exterior = side[size_t(outer_face)];
    } else {
        exterior = bare[0] ? 1 : 0;
    }

    CycleChords cc;
    cc.cycle = cycle;
    for (const Edge& e : g.edges()) {
        if (!cpos.count(e.u) || !cpos.count(e.v) || cycle_edges.count(e)) continue;
        auto [f, g2] = idx.incident_faces(e);
        ensure(side[size_t(f)] == side[size_t(g2)], "classify_chords: chord faces straddle the cycle");
        (side[size_t(f)] == exterior ? cc.external_chords : cc.internal_chords).push_back(e);
    }
    std::sort(cc.internal_chords.begin(), cc.internal_chords.end());
    std::sort(cc.external_chords.begin(), cc.external_chords.end());
    return cc;
}

OuterplaneGraph inner_subgraph(const CycleChords& cc) {
    OuterplaneGraph o;
    o.boundary = cc.cycle;
    o.chords = cc.internal_chords;
    ValidationReport rep = validate_outer(o);
    ensure(rep.ok, "inner_subgraph: not a maximal outerplane graph");
    return o;
}

OuterplaneGraph inner_subgraph(const Triangulation& g, const std::vector<Vertex>& cycle) {
    return inner_subgraph(classify_chords(g, cycle));
}

FlipSet flip_internal_matching(const Triangulation& g, const CycleChords& cc, const FlipSet& s) {
    EmbeddingIndex idx(g);
    std::unordered_set<Edge, EdgeHash> internal(cc.internal_chords.begin(),
                                                cc.internal_chords.end());
    std::unordered_set<Edge, EdgeHash> external(cc.external_chords.begin(),
                                                cc.external_chords.end());
    for (const Edge& e : s)
        require(internal.count(e), "flip_internal_matching: set member is not an internal chord");
    // members pairwise non-consecutive
    {
        std::unordered_map<int, int> face_hits;
        for (const Edge& e : s) {
            auto [f1, f2] = idx.incident_faces(e);
            require(++face_hits[f1] == 1 && ++face_hits[f2] == 1,
                    "flip_internal_matching: set members share a face");
        }
    }

    FlipSet flippable, blocked;
    std::unordered_map<Edge, Edge, EdgeHash> blocker_of;  // blocker -> blocked member
    for (const Edge& e : s) {
        auto [x, y] = idx.seers(e);
        if (!idx.adjacent(x, y)) {
            flippable.push_back(e);
            continue;
        }
        Edge b(x, y);
        ensure(external.count(b), "flip_internal_matching: blocker is not an external chord");
        ensure(!blocker_of.count(b), "flip_internal_matching: two members share a blocker");
        blocker_of[b] = e;
        blocked.push_back(e);
    }

    // 3-colour the blockers so that no two same-coloured ones share a face of
    // g: a proper vertex 3-colouring of the cycle plus all external chords
    // makes every triangle among those edges trichromatic.
    std::array<std::vector<Edge>, 3> classes;
    if (!blocker_of.empty()) {
        int m = int(cc.cycle.size());
        std::unordered_map<Vertex, int> cpos;
        for (int i = 0; i < m; ++i) cpos[cc.cycle[size_t(i)]] = i;
        std::vector<std::pair<int, int>> wedges;
        for (int i = 0; i < m; ++i) wedges.push_back({i, (i + 1) % m});
        for (const Edge& e : cc.external_chords)
            wedges.push_back({cpos.at(e.u), cpos.at(e.v)});
        std::vector<int> colour = degenerate_three_coloring(m, wedges);
        auto cls = [&](const Edge& e) {
            int a = colour[size_t(cpos.at(e.u))], b = colour[size_t(cpos.at(e.v))];
            ensure(a != b, "flip_internal_matching: colouring not proper");
            if ((a == 0 && b == 1) || (a == 1 && b == 0)) return 0;
            if ((a == 0 && b == 2) || (a == 2 && b == 0)) return 1;
            return 2;
        };
        for (const auto& [b, e] : blocker_of) classes[size_t(cls(b))].push_back(b);
    }
    auto best = std::max_element(classes.begin(), classes.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::vector<Edge> result = flippable;
    for (const Edge& b : *best) {
        result.push_back(b);
        result.push_back(blocker_of.at(b));
    }
    FlipSet t = make_flipset(std::move(result));

    FlipCheck chk = check_flipset(idx, t);
    ensure(chk.ok, "flip_internal_matching: produced set fails the characterisation");

    // contract: T avoids the cycle, keeps a third of S, adds only external
    // chords, and no more of them than it keeps
    std::unordered_set<Edge, EdgeHash> in_t(t.begin(), t.end());
    std::unordered_set<Edge, EdgeHash> in_s(s.begin(), s.end());
    size_t kept = 0, added = 0;
    for (const Edge& e : t) {
        if (in_s.count(e)) {
            ++kept;
        } else {
            ensure(external.count(e), "flip_internal_matching: added edge is not external");
            ++added;
        }
        ensure(!Edge(e.u, e.v).touches(-1), "unreachable");
    }
    for (int i = 0; i < int(cc.cycle.size()); ++i)
        ensure(!in_t.count(Edge(cc.cycle[size_t(i)], cc.cycle[size_t((i + 1) % cc.cycle.size())])),
               "flip_internal_matching: cycle edge in T");
    ensure(3 * kept >= s.size(), "flip_internal_matching: kept fewer than |S|/3");
    ensure(added <= kept, "flip_internal_matching: more blockers than kept members");
    return t;
}

namespace {

Edge chord_at(const OuterplaneGraph& o, Vertex v) {
    for (const Edge& e : o.chords)
        if (e.touches(v)) return e;
    throw postcondition_error("expected an internal chord at vertex " + std::to_string(v));
}

}  // namespace

std::pair<FlipSequence, Triangulation> internal_diameter_reduce(const Triangulation& g,
                                                                const std::vector<Vertex>& h) {
    int n0 = int(h.size());
    double bound = morph_c2() * std::log2(std::max(2, n0));
    std::unordered_set<Edge, EdgeHash> h_edges;
    for (int i = 0; i < n0; ++i)
        h_edges.insert(Edge(h[size_t(i)], h[size_t((i + 1) % n0)]));

    FlipSequence seq = empty_sequence(g);
    Triangulation cur = g;
    std::vector<Vertex> cycle = h;

    auto apply_step = [&](const FlipSet& t) {
        for (const Edge& e : t)
            ensure(!h_edges.count(e), "internal_diameter_reduce: tried to flip a cycle edge");
        auto [next, rec] = apply_flipset(cur, t);
        cur = std::move(next);
        seq.push(std::move(rec));
    };

    while (int(cycle.size()) > 4) {
        CycleChords cc = classify_chords(cur, cycle);
        OuterplaneGraph gc = inner_subgraph(cc);
        LowDegreeIndependentSet low = low_degree_independent_set(gc);

        std::unordered_map<Vertex, Edge> chosen;
        std::vector<Edge> s1;
        for (int dcls : {1, 2})
            for (Vertex v : low.by_degree[size_t(dcls)]) {
                Edge e = chord_at(gc, v);
                chosen[v] = e;
                s1.push_back(e);
            }
        std::vector<Vertex> activated3, activated4;
        if (!s1.empty()) {
            FlipSet t = flip_internal_matching(cur, cc, make_flipset(s1));
            std::unordered_set<Edge, EdgeHash> in_t(t.begin(), t.end());
            for (Vertex v : low.by_degree[1])
                if (in_t.count(chosen.at(v))) activated3.push_back(v);
            for (Vertex v : low.by_degree[2])
                if (in_t.count(chosen.at(v))) activated4.push_back(v);
            apply_step(t);
        }

        std::vector<Vertex> activated4b;
        if (!activated4.empty()) {
            CycleChords cc2 = classify_chords(cur, cycle);
            OuterplaneGraph gc2 = inner_subgraph(cc2);
            std::unordered_map<Vertex, Edge> chosen2;
            std::vector<Edge> s2;
            for (Vertex v : activated4) {
                Edge e = chord_at(gc2, v);
                chosen2[v] = e;
                s2.push_back(e);
            }
            FlipSet t2 = flip_internal_matching(cur, cc2, make_flipset(s2));
            std::unordered_set<Edge, EdgeHash> in_t2(t2.begin(), t2.end());
            for (Vertex v : activated4)
                if (in_t2.count(chosen2.at(v))) activated4b.push_back(v);
            apply_step(t2);
        }

        // shortcut the cycle across every degree-2 member
        std::vector<Vertex> shortcut = low.by_degree[0];
        shortcut.insert(shortcut.end(), activated3.begin(), activated3.end());
        shortcut.insert(shortcut.end(), activated4b.begin(), activated4b.end());
        ensure(9 * shortcut.size() >= low.members.size(),
               "internal_diameter_reduce: shrunk by less than |I|/9");

        CycleChords cc3 = classify_chords(cur, cycle);
        OuterplaneGraph gc3 = inner_subgraph(cc3);
        std::unordered_set<Edge, EdgeHash> inner3(cc3.internal_chords.begin(),
                                                  cc3.internal_chords.end());
        std::unordered_set<Vertex> drop(shortcut.begin(), shortcut.end());
        int m = int(cycle.size());
        std::unordered_map<Vertex, int> cpos;
        for (int i = 0; i < m; ++i) cpos[cycle[size_t(i)]] = i;
        for (Vertex v : shortcut) {
            // degree 2 in the inner subgraph and an ear chord ready to take over
            for (const Edge& e : gc3.chords)
                ensure(!e.touches(v), "internal_diameter_reduce: shortcut vertex still has chords");
            int i = cpos.at(v);
            Vertex u = cycle[size_t((i + m - 1) % m)], w = cycle[size_t((i + 1) % m)];
            ensure(!drop.count(u) && !drop.count(w),
                   "internal_diameter_reduce: adjacent shortcut vertices");
            ensure(inner3.count(Edge(u, w)), "internal_diameter_reduce: missing ear chord");
        }
        std::vector<Vertex> next_cycle;
        for (Vertex v : cycle)
            if (!drop.count(v)) next_cycle.push_back(v);
        ensure(next_cycle.size() >= 3, "internal_diameter_reduce: cycle collapsed");
        cycle = std::move(next_cycle);
    }

    ensure(double(seq.length()) <= bound, "internal_diameter_reduce: step bound exceeded");
    OuterplaneGraph inner_h = inner_subgraph(cur, h);
    ensure(double(dual_tree(inner_h).diameter()) <= bound,
           "internal_diameter_reduce: diameter bound exceeded");
    return {std::move(seq), std::move(cur)};
}

Vertex pick_star_vertex(const Triangulation& g, const std::vector<Vertex>& h) {
    CycleChords cc = classify_chords(g, h);
    std::unordered_set<Vertex> has_external;
    for (const Edge& e : cc.external_chords) {
        has_external.insert(e.u);
        has_external.insert(e.v);
    }
    DualTree d = dual_tree(inner_subgraph(cc));
    Vertex best = -1;
    int best_ecc = 1 << 30;
    for (Vertex v : h) {
        if (has_external.count(v)) continue;
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
    ensure(best >= 0, "pick_star_vertex: no vertex free of external chords");
    return best;
}

std::pair<FlipSequence, Triangulation> star(const Triangulation& g, const std::vector<Vertex>& h,
                                            Vertex v) {
    int n = g.size();
    require(int(h.size()) == n, "star: cycle must be Hamiltonian");
    {
        CycleChords cc = classify_chords(g, h);
        for (const Edge& e : cc.external_chords)
            require(!e.touches(v), "star: vertex has an external chord");
    }
    std::unordered_set<Edge, EdgeHash> h_edges;
    for (int i = 0; i < n; ++i) h_edges.insert(Edge(h[size_t(i)], h[size_t((i + 1) % n)]));

    FlipSequence seq = empty_sequence(g);
    Triangulation cur = g;
    int k = dual_tree(inner_subgraph(g, h)).diameter();

    while (true) {
        CycleChords cc = classify_chords(cur, h);
        OuterplaneGraph gc = inner_subgraph(cc);
        DualTree d = dual_tree(gc);
        std::vector<int> pstar;
        for (int f = 0; f < d.node_count(); ++f)
            if (d.faces[size_t(f)].contains(v)) pstar.push_back(f);
        if (int(pstar.size()) == d.node_count()) break;  // v dominant

        std::map<std::pair<int, int>, Edge> pair_chord;
        for (const auto& [e, fg] : d.chord_faces)
            pair_chord[{std::min(fg.first, fg.second), std::max(fg.first, fg.second)}] = e;

        std::vector<int> dist = d.distances_from(pstar);
        std::vector<Edge> flips;
        for (int f : pstar)
            for (int g2 : d.adj[size_t(f)]) {
                if (d.faces[size_t(g2)].contains(v)) continue;
                Edge e = pair_chord.at({std::min(f, g2), std::max(f, g2)});
                ensure(!e.touches(v), "star: flipping an edge at the hub");
                flips.push_back(e);
            }
        ensure(!flips.empty(), "star: stuck before dominance");
        FlipSet s = make_flipset(std::move(flips));
        for (const Edge& e : s) ensure(!h_edges.count(e), "star: tried to flip a cycle edge");
        auto [next, rec] = apply_flipset(cur, s);

        // persistent faces away from the face path come one step closer
        DualTree d2 = dual_tree(inner_subgraph(next, h));
        std::vector<int> pstar2;
        for (int f = 0; f < d2.node_count(); ++f)
            if (d2.faces[size_t(f)].contains(v)) pstar2.push_back(f);
        std::vector<int> dist2 = d2.distances_from(pstar2);
        std::unordered_map<Triple, int, TripleHash> fresh;
        for (int f = 0; f < d2.node_count(); ++f) fresh[d2.faces[size_t(f)]] = dist2[size_t(f)];
        for (int f = 0; f < d.node_count(); ++f) {
            if (dist[size_t(f)] < 2) continue;
            auto it = fresh.find(d.faces[size_t(f)]);
            ensure(it != fresh.end() && it->second <= dist[size_t(f)] - 1,
                   "star: face distance did not decrease");
        }

        cur = std::move(next);
        seq.push(std::move(rec));
        ensure(int(seq.length()) <= std::max(k, 1), "star: exceeded the diameter bound");
    }

    // v dominant with all its edges in the inner subgraph
    ensure(cur.degree(v) == n - 1, "star: vertex did not become dominant");
    CycleChords cc = classify_chords(cur, h);
    for (const Edge& e : cc.external_chords)
        ensure(!e.touches(v), "star: external chord appeared at the hub");
    return {std::move(seq), std::move(cur)};
}

namespace {

int dominant_count(const Triangulation& t) {
    int c = 0;
    for (Vertex v = 0; v < t.size(); ++v) c += t.degree(v) == t.size() - 1;
    return c;
}

// The outerplane graph left by deleting a dominant vertex; its boundary is the
// hub's rotation.
OuterplaneGraph remove_dominant(const Triangulation& t, Vertex hub) {
    require(t.degree(hub) == t.size() - 1, "remove_dominant: vertex is not dominant");
    OuterplaneGraph o;
    o.boundary = t.neighbors(hub);
    std::unordered_set<Edge, EdgeHash> boundary_edges;
    int m = int(o.boundary.size());
    for (int i = 0; i < m; ++i)
        boundary_edges.insert(Edge(o.boundary[size_t(i)], o.boundary[size_t((i + 1) % m)]));
    for (const Edge& e : t.edges()) {
        if (e.touches(hub) || boundary_edges.count(e)) continue;
        o.chords.push_back(e);
    }
    std::sort(o.chords.begin(), o.chords.end());
    ValidationReport rep = validate_outer(o);
    ensure(rep.ok, "remove_dominant: remainder is not maximal outerplane");
    return o;
}

}  // namespace

std::pair<FlipSequence, Triangulation> make_double_dominant(const Triangulation& g) {
    int n = g.size();
    require(n >= 4, "make_double_dominant: need n >= 4");
    ValidationReport rep = validate(g);
    require(rep.ok, "make_double_dominant: invalid triangulation");

    FlipSequence seq = empty_sequence(g);
    if (dominant_count(g) >= 2) return {std::move(seq), g};
    ensure(n >= 6, "make_double_dominant: every triangulation below six vertices is standard");

    Triangulation cur = g;
    if (has_separating_triangle(cur)) {
        auto [s, result] = four_connectify(cur);
        auto [next, rec] = apply_flipset(cur, s);
        ensure(next == result, "make_double_dominant: four_connectify replay diverged");
        cur = std::move(next);
        seq.push(std::move(rec));
    }

    std::vector<Vertex> h = hamiltonian_cycle(cur);

    auto [seq_diam, reduced] = internal_diameter_reduce(cur, h);
    seq.append(seq_diam);
    cur = std::move(reduced);

    Vertex hub = pick_star_vertex(cur, h);
    auto [seq_star, starred] = star(cur, h, hub);
    seq.append(seq_star);
    cur = std::move(starred);

    // sweep the rim: every flip of the hubless outerplane graph is valid in
    // the full triangulation because the hub side of the rim has no chords
    OuterplaneGraph rim = remove_dominant(cur, hub);
    DominantResult sweep = make_outerplane_dominant(rim);
    for (const OuterFlipRecord& rec : sweep.steps) {
        FlipSet s;
        for (const FlipQuad& q : rec.quads) s.push_back(q.removed);
        s = make_flipset(std::move(s));
        FlipCheck chk = check_flipset(cur, s);
        ensure(chk.ok, "make_double_dominant: rim flip invalid in the full triangulation");
        auto [next, trec] = apply_flipset(cur, s);
        cur = std::move(next);
        seq.push(std::move(trec));
    }

    ensure(cur.degree(hub) == n - 1 && cur.degree(sweep.dominant) == n - 1,
           "make_double_dominant: endpoint is not standard");
    double bound = 1.0 + 2.0 * (morph_c1() + morph_c2()) * std::log2(n);
    ensure(double(seq.length()) <= bound, "make_double_dominant: step bound exceeded");
    return {std::move(seq), std::move(cur)};
}

MorphResult morph(const Triangulation& g1, const Triangulation& g2) {
    require(g1.size() == g2.size(), "morph: size mismatch");
    require(g1.size() >= 4, "morph: need n >= 4");
    require(validate(g1).ok && validate(g2).ok, "morph: invalid input");

    if (auto direct = is_isomorphic(g1, g2)) {
        (void)direct;
        return {empty_sequence(g1), g1};
    }

    auto [seq1, d1] = make_double_dominant(g1);
    auto [seq2, d2] = make_double_dominant(g2);

    auto phi = is_isomorphic(d2, d1);
    ensure(phi.has_value(), "morph: standard triangulations must be isomorphic");

    FlipSequence seq = seq1;
    Triangulation cur = d1;
    for (auto it = seq2.steps.rbegin(); it != seq2.steps.rend(); ++it) {
        FlipSet s;
        for (const FlipQuad& q : it->quads)
            s.push_back(Edge(phi->map[size_t(q.inserted.u)], phi->map[size_t(q.inserted.v)]));
        auto [next, rec] = apply_flipset(cur, make_flipset(std::move(s)));
        cur = std::move(next);
        seq.push(std::move(rec));
    }

    ensure(is_isomorphic(cur, g2).has_value(), "morph: endpoint not isomorphic to the target");
    double bound = 2.0 + 4.0 * (morph_c1() + morph_c2()) * std::log2(g1.size());
    ensure(double(seq.length()) <= bound, "morph: step bound exceeded");
    return {std::move(seq), std::move(cur)};
}

}  // namespace simflip
