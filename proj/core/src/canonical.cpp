#include "simflip/canonical.hpp"

#include <algorithm>

namespace simflip {

namespace {

// Breadth-first relabelling of the rotation system rooted at the directed edge
// (r, s). Every vertex is announced through its rotation read in a fixed
// direction starting at the neighbour it was discovered from, so the sequence
// determines the embedding up to orientation-preserving isomorphism.
//
// mirrored = true reads rotations backwards, i.e. encodes the reflection.
struct Encoder {
    const Triangulation& t;
    bool mirrored;

    std::vector<int> ids;         // vertex -> new id, -1 if unseen
    std::vector<Vertex> order;    // new id -> vertex
    std::vector<Vertex> ref;      // vertex -> neighbour the encoding starts from
    std::vector<int32_t> code;

    Encoder(const Triangulation& tt, bool m) : t(tt), mirrored(m) {}

    void run(Vertex r, Vertex s) {
        int n = t.size();
        ids.assign(size_t(n), -1);
        ref.assign(size_t(n), -1);
        order.clear();
        code.clear();
        auto discover = [&](Vertex v, Vertex from) {
            ids[v] = int(order.size());
            order.push_back(v);
            ref[v] = from;
        };
        discover(r, s);
        for (size_t k = 0; k < order.size(); ++k) {
            Vertex v = order[k];
            const auto& rot = t.neighbors(v);
            int deg = int(rot.size());
            int start = 0;
            while (rot[size_t(start)] != ref[v]) ++start;
            code.push_back(deg);
            for (int i = 0; i < deg; ++i) {
                int j = mirrored ? (start - i + deg * 2) % deg : (start + i) % deg;
                Vertex w = rot[size_t(j)];
                if (ids[w] < 0) discover(w, v);
                code.push_back(ids[w]);
            }
        }
    }
};

std::vector<uint8_t> to_bytes(const std::vector<int32_t>& code) {
    std::vector<uint8_t> out;
    out.reserve(code.size() * 4);
    for (int32_t x : code) {
        out.push_back(uint8_t(x >> 24));
        out.push_back(uint8_t(x >> 16));
        out.push_back(uint8_t(x >> 8));
        out.push_back(uint8_t(x));
    }
    return out;
}

struct Best {
    std::vector<int32_t> code;
    std::vector<Vertex> order;
    bool mirrored = false;

    void consider(Encoder& enc) {
        if (code.empty() || enc.code < code) {
            code = enc.code;
            order = enc.order;
            mirrored = enc.mirrored;
        }
    }
};

Best best_encoding(const Triangulation& t, IsoMode mode) {
    Best best;
    Encoder plain(t, false);
    for (Vertex v = 0; v < t.size(); ++v)
        for (Vertex w : t.neighbors(v)) {
            plain.run(v, w);
            best.consider(plain);
        }
    if (mode == IsoMode::Reflect) {
        Encoder mirror(t, true);
        for (Vertex v = 0; v < t.size(); ++v)
            for (Vertex w : t.neighbors(v)) {
                mirror.run(v, w);
                best.consider(mirror);
            }
    }
    return best;
}

}  // namespace

CanonicalCode canonical_code(const Triangulation& t, IsoMode mode) {
    return CanonicalCode{to_bytes(best_encoding(t, mode).code)};
}

std::optional<Isomorphism> is_isomorphic(const Triangulation& t1, const Triangulation& t2,
                                         IsoMode mode) {
    if (t1.size() != t2.size() || t1.edge_count() != t2.edge_count()) return std::nullopt;
    Best b1 = best_encoding(t1, mode);
    Best b2 = best_encoding(t2, mode);
    if (b1.code != b2.code) return std::nullopt;
    Isomorphism iso;
    iso.map.assign(size_t(t1.size()), -1);
    for (int id = 0; id < t1.size(); ++id) iso.map[size_t(b1.order[size_t(id)])] = b2.order[size_t(id)];
    iso.orientation_preserving = (b1.mirrored == b2.mirrored);
    ensure(check_isomorphism(t1, t2, iso.map, iso.orientation_preserving),
           "canonical encoding produced a bad isomorphism");
    return iso;
}

bool check_isomorphism(const Triangulation& t1, const Triangulation& t2,
                       const std::vector<Vertex>& map, bool orientation_preserving) {
    int n = t1.size();
    if (t2.size() != n || int(map.size()) != n) return false;
    std::vector<char> hit(size_t(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        if (map[size_t(v)] < 0 || map[size_t(v)] >= n || hit[size_t(map[size_t(v)])]) return false;
        hit[size_t(map[size_t(v)])] = 1;
    }
    for (Vertex v = 0; v < n; ++v) {
        const auto& r1 = t1.neighbors(v);
        const auto& r2 = t2.neighbors(map[size_t(v)]);
        int d = int(r1.size());
        if (int(r2.size()) != d) return false;
        // mapped rotation must equal r2 up to a cyclic shift (reversed when
        // orientation flips)
        std::vector<Vertex> want(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) want[size_t(i)] = map[size_t(r1[size_t(i)])];
        if (!orientation_preserving) std::reverse(want.begin(), want.end());
        int shift = -1;
        for (int i = 0; i < d; ++i)
            if (r2[size_t(i)] == want[0]) {
                shift = i;
                break;
            }
        if (shift < 0) return false;
        for (int i = 0; i < d; ++i)
            if (r2[size_t((shift + i) % d)] != want[size_t(i)]) return false;
    }
    return true;
}

}  // namespace simflip
