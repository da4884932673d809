#include "simflip/connectivity.hpp"

#include <algorithm>

namespace simflip {

namespace {

// Unit-capacity max-flow with split vertices (in/out), capped at `limit`.
// Node 2v = v_in, 2v+1 = v_out. Source is s_out, sink is t_in.
struct VertexFlow {
    int n;
    std::vector<std::vector<int>> to;    // adjacency as edge ids
    std::vector<int> head;
    std::vector<int> cap;

    explicit VertexFlow(const Triangulation& t) : n(t.size()) {
        to.resize(size_t(2 * n));
        auto add = [&](int a, int b, int c) {
            to[size_t(a)].push_back(int(head.size()));
            head.push_back(b);
            cap.push_back(c);
            to[size_t(b)].push_back(int(head.size()));
            head.push_back(a);
            cap.push_back(0);
        };
        for (Vertex v = 0; v < n; ++v) add(2 * v, 2 * v + 1, 1);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : t.neighbors(v)) add(2 * v + 1, 2 * w, 1);
    }

    // One augmenting path via BFS; returns false when none exists.
    bool augment(int s, int t) {
        std::vector<int> pre(to.size(), -1);
        std::vector<int> q{s};
        pre[size_t(s)] = -2;
        for (size_t qi = 0; qi < q.size(); ++qi) {
            int v = q[qi];
            for (int id : to[size_t(v)]) {
                int w = head[size_t(id)];
                if (cap[size_t(id)] <= 0 || pre[size_t(w)] != -1) continue;
                pre[size_t(w)] = id;
                if (w == t) {
                    for (int cur = t; cur != s;) {
                        int eid = pre[size_t(cur)];
                        cap[size_t(eid)] -= 1;
                        cap[size_t(eid ^ 1)] += 1;
                        cur = head[size_t(eid ^ 1)];
                    }
                    return true;
                }
                q.push_back(w);
            }
        }
        return false;
    }

    int maxflow_upto(int s, int t, int limit) {
        // restore capacities
        for (size_t i = 0; i < cap.size(); i += 2) {
            cap[i] += cap[i + 1];
            cap[i + 1] = 0;
        }
        int flow = 0;
        while (flow < limit && augment(s, t)) ++flow;
        return flow;
    }
};

}  // namespace

bool is_k_connected(const Triangulation& t, int k) {
    int n = t.size();
    if (n <= k) return false;
    for (Vertex v = 0; v < n; ++v)
        if (t.degree(v) < k) return false;

    VertexFlow flow(t);
    auto pair_ok = [&](Vertex a, Vertex b) {
        if (a == b || t.adjacent(a, b)) return true;
        return flow.maxflow_upto(2 * a + 1, 2 * b, k) >= k;
    };

    // A cut of size < k misses at least one of any k+1 distinct pivots, and a
    // pivot outside the cut is non-adjacent to the far side, so testing each
    // pivot against every vertex is exhaustive.
    int pivots = std::min(n, k + 1);
    for (Vertex s = 0; s < pivots; ++s)
        for (Vertex v = 0; v < n; ++v)
            if (!pair_ok(s, v)) return false;
    return true;
}

}  // namespace simflip
