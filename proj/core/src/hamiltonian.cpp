#include "simflip/hamiltonian.hpp"

#include <algorithm>

namespace simflip {

namespace {

// Path extension search. The path grows from `start` at one end; a vertex is
// closable when it is adjacent to start. Prunes on: any free vertex with
// fewer than two usable connections, and disconnected free subgraph.
struct Search {
    const Triangulation& t;
    int n;
    std::vector<char> used;
    std::vector<int> free_deg;  // per free vertex: free neighbours + usable endpoints
    std::vector<Vertex> path;
    Vertex start;
    long nodes = 0;
    long node_budget;

    Search(const Triangulation& tt, long budget)
        : t(tt), n(tt.size()), used(size_t(tt.size()), 0), free_deg(size_t(tt.size()), 0),
          node_budget(budget) {}

    bool connected_free(Vertex tail) const {
        // free vertices plus the current tail must span one component
        int want = 0;
        for (Vertex v = 0; v < n; ++v) want += !used[size_t(v)];
        if (want == 0) return true;
        std::vector<char> seen(size_t(n), 0);
        std::vector<Vertex> stack;
        for (Vertex u : t.neighbors(tail))
            if (!used[size_t(u)] && !seen[size_t(u)]) {
                seen[size_t(u)] = 1;
                stack.push_back(u);
            }
        if (stack.empty()) return false;
        int got = 0;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++got;
            for (Vertex u : t.neighbors(v))
                if (!used[size_t(u)] && !seen[size_t(u)]) {
                    seen[size_t(u)] = 1;
                    stack.push_back(u);
                }
        }
        return got == want;
    }

    bool viable(Vertex tail) const {
        // every free vertex needs at least two usable connections: free
        // neighbours, the tail, or the start
        for (Vertex v = 0; v < n; ++v) {
            if (used[size_t(v)]) continue;
            int c = free_deg[size_t(v)];
            if (t.adjacent(v, tail)) ++c;
            if (t.adjacent(v, start)) ++c;
            if (c < 2) return false;
        }
        return true;
    }

    bool extend(Vertex tail) {
        if (++nodes > node_budget) return false;
        if (int(path.size()) == n) return t.adjacent(tail, start);

        if (!viable(tail)) return false;
        if ((path.size() & 7) == 0 && !connected_free(tail)) return false;

        // fail-first: try free neighbours with the fewest free options
        std::vector<std::pair<int, Vertex>> cand;
        for (Vertex u : t.neighbors(tail))
            if (!used[size_t(u)]) cand.push_back({free_deg[size_t(u)], u});
        std::sort(cand.begin(), cand.end());

        for (auto [key, u] : cand) {
            (void)key;
            used[size_t(u)] = 1;
            path.push_back(u);
            for (Vertex w : t.neighbors(u)) --free_deg[size_t(w)];
            if (extend(u)) return true;
            for (Vertex w : t.neighbors(u)) ++free_deg[size_t(w)];
            path.pop_back();
            used[size_t(u)] = 0;
            if (nodes > node_budget) return false;
        }
        return false;
    }

    bool run(Vertex s) {
        start = s;
        std::fill(used.begin(), used.end(), 0);
        path = {s};
        used[size_t(s)] = 1;
        for (Vertex v = 0; v < n; ++v) free_deg[size_t(v)] = t.degree(v);
        for (Vertex w : t.neighbors(s)) --free_deg[size_t(w)];
        nodes = 0;
        return extend(s);
    }
};

}  // namespace

std::vector<Vertex> hamiltonian_cycle(const Triangulation& t) {
    int n = t.size();
    require(n >= 3, "hamiltonian_cycle: need n >= 3");
    if (n == 3) return {0, 1, 2};

    // Deterministic restart schedule over start vertices with rising budgets.
    std::vector<Vertex> starts(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) starts[size_t(v)] = v;
    std::sort(starts.begin(), starts.end(),
              [&](Vertex a, Vertex b) { return t.degree(a) > t.degree(b); });

    for (long budget = 200000; budget <= 200000L << 8; budget <<= 2) {
        int tries = std::min<int>(n, budget > 200000 ? 16 : 4);
        for (int i = 0; i < tries; ++i) {
            Search search(t, budget);
            if (search.run(starts[size_t(i)])) {
                ensure(check_hamiltonian_cycle(t, search.path),
                       "hamiltonian_cycle: found cycle fails verification");
                return search.path;
            }
        }
    }
    throw postcondition_error("hamiltonian_cycle: search exhausted without a cycle");
}

bool check_hamiltonian_cycle(const Triangulation& t, const std::vector<Vertex>& cycle) {
    int n = t.size();
    if (int(cycle.size()) != n) return false;
    std::vector<char> seen(size_t(n), 0);
    for (Vertex v : cycle) {
        if (v < 0 || v >= n || seen[size_t(v)]) return false;
        seen[size_t(v)] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (!t.adjacent(cycle[size_t(i)], cycle[size_t((i + 1) % n)])) return false;
    return true;
}

}  // namespace simflip
