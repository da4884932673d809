#include "simflip/coloring.hpp"

#include <algorithm>
#include <random>

#include "simflip/generate.hpp"

namespace simflip {

namespace {

// Kempe repair: within the subgraph induced by colours {c1, c2}, swap the two
// colours on the component containing `start`. Returns the flipped component.
void kempe_swap(const Triangulation& t, std::vector<int>& color, Vertex start, int c1, int c2) {
    std::vector<Vertex> stack{start};
    std::vector<char> seen(size_t(t.size()), 0);
    seen[size_t(start)] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        color[size_t(v)] = color[size_t(v)] == c1 ? c2 : c1;
        for (Vertex u : t.neighbors(v)) {
            if (seen[size_t(u)] || color[size_t(u)] < 0) continue;
            if (color[size_t(u)] == c1 || color[size_t(u)] == c2) {
                seen[size_t(u)] = 1;
                stack.push_back(u);
            }
        }
    }
}

struct Dsatur {
    const Triangulation& t;
    int n;
    std::vector<int> color;
    std::vector<int> sat;        // bitmask of neighbour colours
    std::vector<int> uncolored_deg;
    long budget = 0;

    explicit Dsatur(const Triangulation& tt)
        : t(tt), n(tt.size()), color(size_t(tt.size()), -1), sat(size_t(tt.size()), 0),
          uncolored_deg(size_t(tt.size()), 0) {
        for (Vertex v = 0; v < n; ++v) uncolored_deg[size_t(v)] = t.degree(v);
    }

    int pick() const {
        int best = -1;
        auto key = [&](Vertex v) {
            return std::tuple(__builtin_popcount(unsigned(sat[size_t(v)])),
                              uncolored_deg[size_t(v)], -v);
        };
        for (Vertex v = 0; v < n; ++v)
            if (color[size_t(v)] < 0 && (best < 0 || key(v) > key(best))) best = v;
        return best;
    }

    void assign(Vertex v, int c) {
        color[size_t(v)] = c;
        for (Vertex u : t.neighbors(v)) {
            sat[size_t(u)] |= 1 << c;
            --uncolored_deg[size_t(u)];
        }
    }
    void unassign(Vertex v) {
        int c = color[size_t(v)];
        color[size_t(v)] = -1;
        for (Vertex u : t.neighbors(v)) {
            ++uncolored_deg[size_t(u)];
            sat[size_t(u)] = 0;
            for (Vertex w : t.neighbors(u))
                if (color[size_t(w)] >= 0) sat[size_t(u)] |= 1 << color[size_t(w)];
        }
        (void)c;
    }

    bool solve() {
        if (--budget < 0) return false;
        Vertex v = pick();
        if (v < 0) return true;
        int avail = (~sat[size_t(v)]) & 0xf;
        if (!avail) return false;
        for (int c = 0; c < 4; ++c) {
            if (!(avail & (1 << c))) continue;
            assign(v, c);
            if (solve()) return true;
            unassign(v);
        }
        return false;
    }
};

// Greedy DSATUR pass with Kempe-chain repair; fills `color` completely on
// success.
bool greedy_with_kempe(const Triangulation& t, std::vector<int>& color) {
    Dsatur d(t);
    int n = t.size();
    for (int placed = 0; placed < n; ++placed) {
        Vertex v = d.pick();
        int avail = (~d.sat[size_t(v)]) & 0xf;
        if (avail) {
            d.assign(v, __builtin_ctz(unsigned(avail)));
            continue;
        }
        // all four colours around v: try Kempe swaps to free one
        bool fixed = false;
        for (int c1 = 0; c1 < 4 && !fixed; ++c1) {
            for (int c2 = 0; c2 < 4 && !fixed; ++c2) {
                if (c1 == c2) continue;
                for (Vertex u : t.neighbors(v)) {
                    if (d.color[size_t(u)] != c1) continue;
                    kempe_swap(t, d.color, u, c1, c2);
                    // recompute saturations touched by the swap (global rebuild:
                    // simple and still cheap at these sizes)
                    for (Vertex w = 0; w < n; ++w) {
                        d.sat[size_t(w)] = 0;
                        for (Vertex z : t.neighbors(w))
                            if (d.color[size_t(z)] >= 0) d.sat[size_t(w)] |= 1 << d.color[size_t(z)];
                    }
                    if (((~d.sat[size_t(v)]) & 0xf) != 0) {
                        d.assign(v, __builtin_ctz(unsigned((~d.sat[size_t(v)]) & 0xf)));
                        fixed = true;
                    }
                    break;  // one swap attempt per colour pair
                }
            }
        }
        if (!fixed) return false;
    }
    color = d.color;
    return true;
}

}  // namespace

std::vector<int> planar_four_coloring(const Triangulation& t) {
    std::vector<int> color;
    if (greedy_with_kempe(t, color)) return color;

    // Exact search. The four-colour theorem guarantees success, so widen the
    // budget until the backtracking finishes.
    for (long budget = 1L << 16; budget <= (1L << 30); budget <<= 2) {
        Dsatur d(t);
        d.budget = budget;
        if (d.solve()) return d.color;
    }
    throw postcondition_error("planar_four_coloring: search budget exhausted");
}

std::vector<int> degenerate_three_coloring(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [u, v] : edges) {
        adj[size_t(u)].push_back(v);
        adj[size_t(v)].push_back(u);
    }
    // peel vertices of degree <= 2, colour greedily in reverse order
    std::vector<int> deg(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) deg[size_t(v)] = int(adj[size_t(v)].size());
    std::vector<char> gone(size_t(n), 0);
    std::vector<int> order;
    for (int round = 0; round < n; ++round) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!gone[size_t(v)] && deg[size_t(v)] <= 2) {
                pick = v;
                break;
            }
        ensure(pick >= 0, "degenerate_three_coloring: graph is not 2-degenerate");
        gone[size_t(pick)] = 1;
        order.push_back(pick);
        for (int u : adj[size_t(pick)])
            if (!gone[size_t(u)]) --deg[size_t(u)];
    }
    std::vector<int> color(size_t(n), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int used = 0;
        for (int u : adj[size_t(*it)])
            if (color[size_t(u)] >= 0) used |= 1 << color[size_t(u)];
        int c = 0;
        while (used & (1 << c)) ++c;
        ensure(c < 3, "degenerate_three_coloring: needed a fourth colour");
        color[size_t(*it)] = c;
    }
    return color;
}

std::vector<int> tree_edge_three_coloring(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));  // (neighbour, edge id)
    for (int i = 0; i < int(edges.size()); ++i) {
        auto [u, v] = edges[size_t(i)];
        adj[size_t(u)].push_back({v, i});
        adj[size_t(v)].push_back({u, i});
    }
    for (int v = 0; v < n; ++v)
        require(adj[size_t(v)].size() <= 3, "tree_edge_three_coloring: degree above 3");

    std::vector<int> color(edges.size(), -1);
    std::vector<char> seen(size_t(n), 0);
    for (int root = 0; root < n; ++root) {
        if (seen[size_t(root)]) continue;
        // DFS; at each vertex give child edges the smallest colours unused there
        std::vector<std::pair<int, int>> stack{{root, -1}};  // (vertex, incoming edge id)
        seen[size_t(root)] = 1;
        while (!stack.empty()) {
            auto [v, in_edge] = stack.back();
            stack.pop_back();
            int used = in_edge >= 0 ? 1 << color[size_t(in_edge)] : 0;
            for (auto [u, id] : adj[size_t(v)]) {
                if (seen[size_t(u)]) continue;
                int c = 0;
                while (used & (1 << c)) ++c;
                ensure(c < 3, "tree_edge_three_coloring: ran out of colours");
                color[size_t(id)] = c;
                used |= 1 << c;
                seen[size_t(u)] = 1;
                stack.push_back({u, id});
            }
        }
    }
    return color;
}

}  // namespace simflip
