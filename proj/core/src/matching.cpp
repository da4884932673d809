#include "simflip/matching.hpp"

#include <numeric>
#include <queue>

namespace simflip {

namespace {

struct Blossom {
    int n;
    const std::vector<std::vector<int>>& g;
    std::vector<int> match, parent, base;
    std::vector<char> used, in_blossom;

    explicit Blossom(int nn, const std::vector<std::vector<int>>& gg)
        : n(nn), g(gg), match(size_t(nn), -1), parent(size_t(nn)), base(size_t(nn)),
          used(size_t(nn)), in_blossom(size_t(nn)) {}

    void mark_path(int v, int b, int child) {
        while (base[size_t(v)] != b) {
            in_blossom[size_t(base[size_t(v)])] = 1;
            in_blossom[size_t(base[size_t(match[size_t(v)])])] = 1;
            parent[size_t(v)] = child;
            child = match[size_t(v)];
            v = parent[size_t(match[size_t(v)])];
        }
    }

    int lca(int a, int b) {
        std::vector<char> seen(size_t(n), 0);
        int v = a;
        while (true) {
            v = base[size_t(v)];
            seen[size_t(v)] = 1;
            if (match[size_t(v)] == -1) break;
            v = parent[size_t(match[size_t(v)])];
        }
        v = b;
        while (true) {
            v = base[size_t(v)];
            if (seen[size_t(v)]) return v;
            v = parent[size_t(match[size_t(v)])];
        }
    }

    int find_augmenting(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        used[size_t(root)] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g[size_t(v)]) {
                if (base[size_t(v)] == base[size_t(to)] || match[size_t(v)] == to) continue;
                if (to == root ||
                    (match[size_t(to)] != -1 && parent[size_t(match[size_t(to)])] != -1)) {
                    int cur = lca(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[size_t(base[size_t(i)])]) {
                            base[size_t(i)] = cur;
                            if (!used[size_t(i)]) {
                                used[size_t(i)] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent[size_t(to)] == -1) {
                    parent[size_t(to)] = v;
                    if (match[size_t(to)] == -1) return to;
                    used[size_t(match[size_t(to)])] = 1;
                    q.push(match[size_t(to)]);
                }
            }
        }
        return -1;
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent[size_t(v)], ppv = match[size_t(pv)];
            match[size_t(v)] = pv;
            match[size_t(pv)] = v;
            v = ppv;
        }
    }
};

}  // namespace

std::vector<int> max_matching(int n, const std::vector<std::vector<int>>& adj) {
    Blossom bl(n, adj);
    for (int v = 0; v < n; ++v) {
        if (bl.match[size_t(v)] != -1) continue;
        for (int to : adj[size_t(v)])
            if (bl.match[size_t(to)] == -1) {
                bl.match[size_t(v)] = to;
                bl.match[size_t(to)] = v;
                break;
            }
    }
    for (int v = 0; v < n; ++v) {
        if (bl.match[size_t(v)] != -1) continue;
        int leaf = bl.find_augmenting(v);
        if (leaf != -1) bl.augment(leaf);
    }
    return bl.match;
}

}  // namespace simflip
