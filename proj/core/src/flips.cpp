#include "simflip/flips.hpp"

#include <algorithm>
#include <sstream>

namespace simflip {

FlipSet make_flipset(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::string Violation::to_string() const {
    std::ostringstream out;
    auto edge = [](const Edge& e) {
        return std::to_string(e.u) + "-" + std::to_string(e.v);
    };
    switch (kind) {
        case Kind::Consecutive:
            out << "consecutive: " << edge(a) << " and " << edge(b) << " share a face";
            break;
        case Kind::BadPair:
            out << "bad-pair: " << edge(a) << " and " << edge(b) << " have the same seers";
            break;
        case Kind::BlockedWithoutBlocker:
            out << "blocked: " << edge(a) << " is blocked by " << edge(b)
                << " which is not in the set";
            break;
    }
    return out.str();
}

namespace {

void require_flip_input(const Triangulation& t) {
    require(t.size() >= 4, "flip operations reject K3 and smaller inputs");
}

void require_member(const EmbeddingIndex& idx, const Edge& e) {
    require(idx.adjacent(e.u, e.v), "edge " + std::to_string(e.u) + "-" +
                                        std::to_string(e.v) + " is not in the triangulation");
}

}  // namespace

EdgeView edge_view(const EmbeddingIndex& idx, const Edge& e) {
    require_flip_input(idx.graph());
    require_member(idx, e);
    EdgeView view;
    view.edge = e;
    view.seer_left = idx.third(e.u, e.v);
    view.seer_right = idx.third(e.v, e.u);
    view.face_left = Face(e.u, e.v, view.seer_left);
    view.face_right = Face(e.v, e.u, view.seer_right);
    return view;
}

EdgeView edge_view(const Triangulation& t, const Edge& e) {
    return edge_view(EmbeddingIndex(t), e);
}

bool is_individually_flippable(const EmbeddingIndex& idx, const Edge& e) {
    return !blocking_edge(idx, e).has_value();
}

bool is_individually_flippable(const Triangulation& t, const Edge& e) {
    return is_individually_flippable(EmbeddingIndex(t), e);
}

std::optional<Edge> blocking_edge(const EmbeddingIndex& idx, const Edge& e) {
    EdgeView view = edge_view(idx, e);
    if (idx.adjacent(view.seer_left, view.seer_right))
        return Edge(view.seer_left, view.seer_right);
    return std::nullopt;
}

std::optional<Edge> blocking_edge(const Triangulation& t, const Edge& e) {
    return blocking_edge(EmbeddingIndex(t), e);
}

std::vector<Edge> bad_pair_partner(const EmbeddingIndex& idx, const Edge& e) {
    EdgeView view = edge_view(idx, e);
    Vertex x = view.seer_left;
    // Candidates are the link edges of x: pairs consecutive in x's rotation.
    const auto& rot = idx.graph().neighbors(x);
    int d = int(rot.size());
    std::vector<Edge> out;
    for (int i = 0; i < d; ++i) {
        Edge f(rot[size_t(i)], rot[size_t((i + 1) % d)]);
        if (f == e || !idx.adjacent(f.u, f.v)) continue;
        auto [p, q] = idx.seers(f);
        if (Edge(p, q) == Edge(view.seer_left, view.seer_right)) out.push_back(f);
    }
    return make_flipset(std::move(out));
}

std::vector<Edge> bad_pair_partner(const Triangulation& t, const Edge& e) {
    return bad_pair_partner(EmbeddingIndex(t), e);
}

FlipCheck check_flipset(const EmbeddingIndex& idx, const FlipSet& s) {
    require_flip_input(idx.graph());
    FlipCheck res;
    for (const Edge& e : s) require_member(idx, e);

    std::unordered_set<Edge, EdgeHash> in_set(s.begin(), s.end());

    // (1) two members on one face
    std::unordered_map<int, std::vector<Edge>> by_face;
    for (const Edge& e : s) {
        auto [f, g] = idx.incident_faces(e);
        by_face[f].push_back(e);
        by_face[g].push_back(e);
    }
    for (auto& [f, members] : by_face) {
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j)
                res.violations.push_back(
                    {Violation::Kind::Consecutive, members[i], members[j]});
    }

    // (2) two members with equal seer pairs
    std::unordered_map<Edge, std::vector<Edge>, EdgeHash> by_seers;
    for (const Edge& e : s) {
        auto [x, y] = idx.seers(e);
        by_seers[Edge(x, y)].push_back(e);
    }
    for (auto& [seers, members] : by_seers) {
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j)
                res.violations.push_back({Violation::Kind::BadPair, members[i], members[j]});
    }

    // (3) blocked member whose blocker is outside the set
    for (const Edge& e : s) {
        auto [x, y] = idx.seers(e);
        if (idx.adjacent(x, y) && !in_set.count(Edge(x, y)))
            res.violations.push_back({Violation::Kind::BlockedWithoutBlocker, e, Edge(x, y)});
    }

    std::sort(res.violations.begin(), res.violations.end(),
              [](const Violation& x, const Violation& y) {
                  return std::tie(x.kind, x.a, x.b) < std::tie(y.kind, y.a, y.b);
              });
    res.ok = res.violations.empty();
    return res;
}

FlipCheck check_flipset(const Triangulation& t, const FlipSet& s) {
    return check_flipset(EmbeddingIndex(t), s);
}

namespace {

// The literal simultaneous replacement: drop every set edge, insert each new
// edge xy at x into the angular slot its quadrilateral occupied (between u and
// v in x's original rotation). Slots never collide because each one is keyed
// by the flipped edge's own endpoints.
Triangulation flip_surgery(const EmbeddingIndex& idx, const FlipSet& s,
                           std::vector<FlipQuad>* quads_out) {
    const Triangulation& t = idx.graph();
    int n = t.size();

    std::vector<std::unordered_set<Vertex>> removed(static_cast<size_t>(n));
    // per vertex: slot (after, before) -> inserted vertices
    std::vector<std::unordered_map<uint64_t, std::vector<Vertex>>> inserts(static_cast<size_t>(n));
    auto slot_key = [](Vertex a, Vertex b) {
        return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
    };

    for (const Edge& e : s) {
        Vertex x = idx.third(e.u, e.v);
        Vertex y = idx.third(e.v, e.u);
        removed[size_t(e.u)].insert(e.v);
        removed[size_t(e.v)].insert(e.u);
        inserts[size_t(x)][slot_key(e.u, e.v)].push_back(y);
        inserts[size_t(y)][slot_key(e.v, e.u)].push_back(x);
        if (quads_out) quads_out->push_back({e, Edge(x, y)});
    }

    std::vector<std::vector<Vertex>> rot(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        const auto& old = t.neighbors(v);
        int d = int(old.size());
        auto& fresh = rot[size_t(v)];
        fresh.reserve(size_t(d));
        for (int i = 0; i < d; ++i) {
            Vertex a = old[size_t(i)];
            if (!removed[size_t(v)].count(a)) fresh.push_back(a);
            if (inserts[size_t(v)].empty()) continue;
            auto it = inserts[size_t(v)].find(slot_key(a, old[size_t((i + 1) % d)]));
            if (it != inserts[size_t(v)].end())
                fresh.insert(fresh.end(), it->second.begin(), it->second.end());
        }
    }

    // Keep the outerface when it survived, otherwise re-root at some face of
    // the new system (when one exists; validation handles the rest).
    Triangulation out(std::move(rot), t.outerface());
    ValidationReport rep = validate(out);
    if (!rep.ok) {
        std::vector<Face> fs;
        bool outer_gone = false;
        for (const auto& msg : rep.violations)
            if (msg.find("outerface") != std::string::npos) outer_gone = true;
        if (outer_gone && rep.violations.size() == 1) {
            fs = faces(out);
            out = out.with_outerface(fs.front());
        }
    }
    return out;
}

}  // namespace

std::pair<Triangulation, FlipRecord> apply_flipset(const Triangulation& t, const FlipSet& s) {
    EmbeddingIndex idx(t);
    FlipCheck chk = check_flipset(idx, s);
    if (!chk.ok) {
        std::string msg = "apply_flipset: set is not flippable:";
        for (const auto& violation : chk.violations) msg += " [" + violation.to_string() + "]";
        throw domain_error(msg);
    }
    FlipRecord record;
    record.host_hash = labeled_hash(t);
    record.host_outerface = t.outerface();
    Triangulation out = flip_surgery(idx, s, &record.quads);
    ValidationReport rep = validate(out);
    ensure(rep.ok, "apply_flipset: checked set produced an invalid triangulation");
    ensure(out.edge_count() == t.edge_count(), "apply_flipset: edge count changed");
    std::sort(record.quads.begin(), record.quads.end(),
              [](const FlipQuad& a, const FlipQuad& b) { return a.removed < b.removed; });
    record.result_hash = labeled_hash(out);
    return {std::move(out), std::move(record)};
}

bool brute_force_check(const Triangulation& t, const FlipSet& s) {
    if (t.size() < 4) return s.empty() && is_valid(t);
    EmbeddingIndex idx(t);
    for (const Edge& e : s) require_member(idx, e);
    Triangulation out = flip_surgery(idx, s, nullptr);
    return validate(out).ok;
}

FlipSet invert(const FlipRecord& record) {
    std::vector<Edge> inv;
    inv.reserve(record.quads.size());
    for (const FlipQuad& q : record.quads) inv.push_back(q.inserted);
    return make_flipset(std::move(inv));
}

Triangulation apply_inverse(const Triangulation& result, const FlipRecord& record) {
    require(labeled_hash(result) == record.result_hash,
            "apply_inverse: record does not match this triangulation");
    auto [back, rec] = apply_flipset(result, invert(record));
    ensure(labeled_hash(back) == record.host_hash,
           "apply_inverse: round trip did not restore the host");
    (void)rec;
    back = back.with_outerface(record.host_outerface);
    ensure(validate(back).ok, "apply_inverse: host outerface vanished");
    return back;
}

}  // namespace simflip
