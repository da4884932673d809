#include "simflip/separating.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace simflip {

namespace {

// Reverse-removal construction: repeatedly strip a contour vertex that is not
// an endpoint of a chord of the current boundary. The outerface apex goes
// first so the ordering ends at c; later ties break to the smallest id.
struct Peeler {
    const Triangulation& t;
    int n;
    std::vector<char> removed;
    std::vector<char> on_contour;
    std::vector<Vertex> nxt, prv;          // contour cycle links
    std::vector<int> contour_nbrs;         // per vertex: neighbours currently on contour
    std::set<Vertex> eligible;
    Vertex a, b;

    explicit Peeler(const Triangulation& tt)
        : t(tt),
          n(tt.size()),
          removed(size_t(tt.size()), 0),
          on_contour(size_t(tt.size()), 0),
          nxt(size_t(tt.size()), -1),
          prv(size_t(tt.size()), -1),
          contour_nbrs(size_t(tt.size()), 0) {}

    int chords(Vertex v) const { return contour_nbrs[size_t(v)] - 2; }

    void refresh_eligible(Vertex v) {
        bool ok = on_contour[size_t(v)] && !removed[size_t(v)] && v != a && v != b &&
                  chords(v) == 0;
        if (ok)
            eligible.insert(v);
        else
            eligible.erase(v);
    }

    void enter_contour(Vertex x) {
        on_contour[size_t(x)] = 1;
        contour_nbrs[size_t(x)] = 0;
        for (Vertex u : t.neighbors(x)) {
            if (removed[size_t(u)]) continue;
            if (on_contour[size_t(u)]) {
                ++contour_nbrs[size_t(x)];
                ++contour_nbrs[size_t(u)];
            }
        }
    }

    // Remove contour vertex v; returns its attachment fan p..q in contour order.
    std::vector<Vertex> remove(Vertex v) {
        Vertex p = prv[size_t(v)], q = nxt[size_t(v)];
        removed[size_t(v)] = 1;
        on_contour[size_t(v)] = 0;
        eligible.erase(v);
        for (Vertex u : t.neighbors(v))
            if (!removed[size_t(u)] && on_contour[size_t(u)]) --contour_nbrs[size_t(u)];

        // Unremoved neighbours of a boundary vertex form one contiguous arc of
        // its rotation from p to q; walk it in whichever direction stays alive.
        const auto& rot = t.neighbors(v);
        int d = int(rot.size());
        int alive = 0;
        int posp = -1;
        for (int i = 0; i < d; ++i) {
            if (!removed[size_t(rot[size_t(i)])]) ++alive;
            if (rot[size_t(i)] == p) posp = i;
        }
        ensure(posp >= 0, "canonical ordering: contour predecessor is not a neighbour");
        auto walk = [&](int dir) {
            std::vector<Vertex> seq{p};
            for (int i = 1; i < d; ++i) {
                Vertex cur = rot[size_t(((posp + dir * i) % d + d) % d)];
                if (removed[size_t(cur)]) return std::vector<Vertex>{};
                seq.push_back(cur);
                if (cur == q) return seq;
            }
            return std::vector<Vertex>{};
        };
        std::vector<Vertex> fan = walk(+1);
        if (fan.empty()) fan = walk(-1);
        ensure(int(fan.size()) == alive && fan.size() >= 2,
               "canonical ordering: attachment fan is not an arc");

        // splice the fan into the contour in place of v
        std::vector<Vertex> entered;
        Vertex prev = p;
        for (size_t i = 1; i + 1 < fan.size(); ++i) {
            Vertex x = fan[i];
            if (!on_contour[size_t(x)]) {
                enter_contour(x);
                entered.push_back(x);
            }
            nxt[size_t(prev)] = x;
            prv[size_t(x)] = prev;
            prev = x;
        }
        nxt[size_t(prev)] = q;
        prv[size_t(q)] = prev;

        // eligibility can change for anything near the splice
        for (Vertex u : t.neighbors(v))
            if (!removed[size_t(u)]) refresh_eligible(u);
        for (Vertex x : entered)
            for (Vertex u : t.neighbors(x))
                if (!removed[size_t(u)]) refresh_eligible(u);
        refresh_eligible(p);
        refresh_eligible(q);
        return fan;
    }
};

}  // namespace

CanonicalOrdering canonical_ordering(const Triangulation& t) {
    require(t.size() >= 3, "canonical_ordering: need n >= 3");
    ValidationReport rep = validate(t);
    require(rep.ok, "canonical_ordering: invalid triangulation");

    int n = t.size();
    const Face& outer = t.outerface();
    Vertex a = outer.v[0], b = outer.v[1], c = outer.v[2];

    CanonicalOrdering ord;
    ord.order.assign(size_t(n), -1);
    ord.index.assign(size_t(n), -1);
    ord.attachment.assign(size_t(n), {});

    Peeler peel(t);
    peel.a = a;
    peel.b = b;
    // initial contour = outerface cycle
    peel.nxt[size_t(a)] = b;
    peel.nxt[size_t(b)] = c;
    peel.nxt[size_t(c)] = a;
    peel.prv[size_t(b)] = a;
    peel.prv[size_t(c)] = b;
    peel.prv[size_t(a)] = c;
    for (Vertex v : {a, b, c}) peel.enter_contour(v);
    for (Vertex v : {a, b, c}) peel.refresh_eligible(v);

    int slot = n - 1;
    auto place = [&](Vertex v) {
        std::vector<Vertex> fan = peel.remove(v);
        ord.order[size_t(slot)] = v;
        ord.attachment[size_t(v)] = std::move(fan);
        --slot;
    };

    if (n == 3) {
        ord.order = {a, b, c};
        ord.attachment[size_t(c)] = {a, b};
    } else {
        place(c);  // v_n is the outerface apex
        while (slot >= 2) {
            ensure(!peel.eligible.empty(), "canonical ordering: no removable contour vertex");
            place(*peel.eligible.begin());
        }
        ord.order[0] = a;
        ord.order[1] = b;
    }
    for (int i = 0; i < n; ++i) ord.index[size_t(ord.order[size_t(i)])] = i;
    ensure(verify_canonical_ordering(t, ord), "canonical ordering failed verification");
    return ord;
}

bool verify_canonical_ordering(const Triangulation& t, const CanonicalOrdering& ord,
                               std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    int n = t.size();
    if (int(ord.order.size()) != n) return fail("order has wrong length");
    std::vector<char> placed(size_t(n), 0);
    const Face& outer = t.outerface();
    if (ord.order[0] != outer.v[0] || ord.order[1] != outer.v[1])
        return fail("order must start with the outerface edge");
    if (n > 3 && ord.order[size_t(n - 1)] != outer.v[2])
        return fail("order must end with the outerface apex");

    std::vector<Vertex> contour = {ord.order[0], ord.order[1]};
    if (!t.adjacent(contour[0], contour[1])) return fail("v1 and v2 are not adjacent");
    placed[size_t(contour[0])] = placed[size_t(contour[1])] = 1;

    for (int i = 2; i < n; ++i) {
        Vertex v = ord.order[size_t(i)];
        if (v < 0 || v >= n || placed[size_t(v)]) return fail("order is not a permutation");
        std::vector<int> hits;
        for (int j = 0; j < int(contour.size()); ++j)
            if (t.adjacent(v, contour[size_t(j)])) hits.push_back(j);
        int placed_nbrs = 0;
        for (Vertex u : t.neighbors(v)) placed_nbrs += placed[size_t(u)];
        if (int(hits.size()) != placed_nbrs)
            return fail("vertex " + std::to_string(v) + " has placed neighbours off the contour");
        if (hits.size() < 2)
            return fail("vertex " + std::to_string(v) + " attaches to fewer than 2 vertices");
        for (size_t j = 1; j < hits.size(); ++j)
            if (hits[j] != hits[j - 1] + 1)
                return fail("attachment of vertex " + std::to_string(v) + " is not an interval");
        // replace the covered interior with v
        std::vector<Vertex> next(contour.begin(), contour.begin() + hits.front() + 1);
        next.push_back(v);
        next.insert(next.end(), contour.begin() + hits.back(), contour.end());
        contour = std::move(next);
        placed[size_t(v)] = 1;
    }
    if (contour.size() != 3 && n > 3) return fail("final contour is not the outer triangle");
    return true;
}

namespace {

std::vector<Triple> all_triangles(const Triangulation& t) {
    int n = t.size();
    // Degeneracy order: planar graphs always have a vertex of degree <= 5.
    std::vector<int> deg(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) deg[size_t(v)] = t.degree(v);
    std::vector<char> gone(size_t(n), 0);
    std::vector<int> rank(size_t(n), 0);
    std::set<std::pair<int, Vertex>> pq;
    for (Vertex v = 0; v < n; ++v) pq.insert({deg[size_t(v)], v});
    for (int i = 0; i < n; ++i) {
        auto [d, v] = *pq.begin();
        pq.erase(pq.begin());
        gone[size_t(v)] = 1;
        rank[size_t(v)] = i;
        for (Vertex u : t.neighbors(v))
            if (!gone[size_t(u)]) {
                pq.erase({deg[size_t(u)], u});
                --deg[size_t(u)];
                pq.insert({deg[size_t(u)], u});
            }
    }
    std::vector<std::vector<Vertex>> out(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : t.neighbors(v))
            if (rank[size_t(v)] < rank[size_t(u)]) out[size_t(v)].push_back(u);

    std::vector<Triple> tris;
    for (Vertex v = 0; v < n; ++v) {
        const auto& o = out[size_t(v)];
        for (size_t i = 0; i < o.size(); ++i)
            for (size_t j = i + 1; j < o.size(); ++j)
                if (t.adjacent(o[i], o[j])) tris.emplace_back(v, o[i], o[j]);
    }
    return tris;
}

}  // namespace

std::vector<SeparatingTriangle> separating_triangles(const Triangulation& t) {
    ValidationReport rep = validate(t);
    require(rep.ok, "separating_triangles: invalid triangulation");
    int n = t.size();

    std::unordered_set<Triple, TripleHash> face_set;
    for (const Face& f : faces(t)) face_set.insert(Triple(f));

    std::vector<SeparatingTriangle> out;
    for (const Triple& tri : all_triangles(t)) {
        if (face_set.count(tri)) continue;
        SeparatingTriangle st;
        st.tri = tri;
        // flood fill the two sides
        std::vector<int> comp(size_t(n), -1);
        comp[size_t(tri.v[0])] = comp[size_t(tri.v[1])] = comp[size_t(tri.v[2])] = -2;
        int ncomp = 0;
        for (Vertex s = 0; s < n; ++s) {
            if (comp[size_t(s)] != -1) continue;
            std::vector<Vertex> stack{s};
            comp[size_t(s)] = ncomp;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Vertex u : t.neighbors(v))
                    if (comp[size_t(u)] == -1) {
                        comp[size_t(u)] = ncomp;
                        stack.push_back(u);
                    }
            }
            ++ncomp;
        }
        ensure(ncomp == 2, "non-face triangle must separate into exactly two components");
        int outer_comp = -1;
        for (Vertex w : t.outerface().v)
            if (comp[size_t(w)] >= 0) outer_comp = comp[size_t(w)];
        ensure(outer_comp >= 0, "outerface vanished inside a separating triangle");
        for (Vertex v = 0; v < n; ++v) {
            if (comp[size_t(v)] < 0) continue;
            (comp[size_t(v)] == outer_comp ? st.ocom : st.icom).push_back(v);
        }
        out.push_back(std::move(st));
    }
    std::sort(out.begin(), out.end(), [](const SeparatingTriangle& x, const SeparatingTriangle& y) {
        return x.tri < y.tri;
    });
    return out;
}

std::vector<SeparatingTriangle> separating_triangles(const Triangulation& t,
                                                     const CanonicalOrdering& ord) {
    auto list = separating_triangles(t);
    for (auto& st : list) {
        int lvl = -1;
        for (Vertex v : st.tri.v) lvl = std::max(lvl, ord.index[size_t(v)]);
        st.level = lvl;
    }
    return list;
}

bool has_separating_triangle(const Triangulation& t) {
    std::unordered_set<Triple, TripleHash> face_set;
    for (const Face& f : faces(t)) face_set.insert(Triple(f));
    for (const Triple& tri : all_triangles(t))
        if (!face_set.count(tri)) return true;
    return false;
}

ContainmentOrder containment_order(const Triangulation& t) {
    CanonicalOrdering ord = canonical_ordering(t);
    std::vector<SeparatingTriangle> sts = separating_triangles(t, ord);

    // Sort by level; inside one level by the contour interval of the two
    // non-apex vertices on the apex's attachment path (narrower = more deeply
    // nested = earlier). Disjoint intervals may come in either order.
    struct Key {
        int level;
        int width;
        int left;
    };
    std::vector<std::pair<Key, size_t>> keyed;
    for (size_t i = 0; i < sts.size(); ++i) {
        const SeparatingTriangle& st = sts[i];
        Vertex apex = ord.order[size_t(st.level)];
        const auto& path = ord.attachment[size_t(apex)];
        int pa = -1, pb = -1;
        for (int j = 0; j < int(path.size()); ++j) {
            if (path[size_t(j)] == st.tri.v[0] || path[size_t(j)] == st.tri.v[1] ||
                path[size_t(j)] == st.tri.v[2]) {
                if (pa < 0)
                    pa = j;
                else
                    pb = j;
            }
        }
        ensure(pa >= 0 && pb > pa,
               "separating triangle vertices missing from the apex attachment path");
        keyed.push_back({{st.level, pb - pa, pa}, i});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first.level, x.first.width, x.first.left) <
               std::tie(y.first.level, y.first.width, y.first.left);
    });

    ContainmentOrder res;
    for (const auto& [key, i] : keyed) res.triangles.push_back(sts[i]);
    return res;
}

int max_nesting_depth(const ContainmentOrder& order) {
    // The icoms form a laminar family: containment is decided by any single
    // member vertex.
    size_t k = order.triangles.size();
    std::vector<std::unordered_set<Vertex>> icoms(k);
    for (size_t i = 0; i < k; ++i)
        icoms[i] = {order.triangles[i].icom.begin(), order.triangles[i].icom.end()};
    int best = 0;
    std::vector<int> depth(k, 1);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (order.triangles[j].icom.empty()) continue;
            Vertex probe = order.triangles[j].icom.front();
            if (icoms[i].count(probe) &&
                order.triangles[j].icom.size() < order.triangles[i].icom.size())
                depth[i] = std::max(depth[i], depth[j] + 1);
        }
        best = std::max(best, depth[i]);
    }
    return best;
}

}  // namespace simflip
