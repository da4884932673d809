#include "simflip/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace simflip {

void Triangulation::normalize() {
    for (auto& r : rot_) {
        if (r.empty()) continue;
        auto min_it = std::min_element(r.begin(), r.end());
        std::rotate(r.begin(), min_it, r.end());
    }
}

int Triangulation::edge_count() const {
    size_t deg_sum = 0;
    for (const auto& r : rot_) deg_sum += r.size();
    return int(deg_sum / 2);
}

bool Triangulation::adjacent(Vertex u, Vertex v) const {
    const auto& r = rot_[u];
    return std::find(r.begin(), r.end(), v) != r.end();
}

std::vector<Edge> Triangulation::edges() const {
    std::vector<Edge> out;
    out.reserve(size_t(edge_count()));
    for (Vertex v = 0; v < size(); ++v)
        for (Vertex w : rot_[v])
            if (v < w) out.emplace_back(v, w);
    return out;
}

Triangulation Triangulation::with_outerface(const Face& f) const {
    return Triangulation(rot_, f);
}

Triangulation Triangulation::reflected() const {
    auto r = rot_;
    for (auto& lst : r) std::reverse(lst.begin(), lst.end());
    return Triangulation(std::move(r), Face(outer_.v[0], outer_.v[2], outer_.v[1]));
}

namespace {

bool connected(const Triangulation& t) {
    int n = t.size();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : t.neighbors(v))
            if (w >= 0 && w < n && !seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == n;
}

// Traverses all faces of the rotation system; returns nullopt when some face
// walk does not close into a triangle (which also catches genus defects via
// the face-count check in validate()).
std::optional<std::vector<Face>> traverse_faces(const Triangulation& t) {
    int n = t.size();
    std::unordered_map<uint64_t, int> pos;
    for (Vertex v = 0; v < n; ++v) {
        const auto& r = t.neighbors(v);
        for (int i = 0; i < int(r.size()); ++i)
            pos[(uint64_t(uint32_t(v)) << 32) | uint32_t(r[i])] = i;
    }
    auto prev_ccw = [&](Vertex u, Vertex v) -> Vertex {
        const auto& r = t.neighbors(u);
        int i = pos.at((uint64_t(uint32_t(u)) << 32) | uint32_t(v));
        return r[(i + r.size() - 1) % r.size()];
    };

    std::unordered_set<uint64_t> visited;
    std::vector<Face> out;
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : t.neighbors(v)) {
            uint64_t k = (uint64_t(uint32_t(v)) << 32) | uint32_t(w);
            if (visited.count(k)) continue;
            // Walk the face to the left of v->w; the next directed edge after
            // a->b is b->prev_ccw(b, a).
            Vertex a = v, b = w;
            std::vector<Vertex> cycle;
            for (int steps = 0; steps < 4; ++steps) {
                visited.insert((uint64_t(uint32_t(a)) << 32) | uint32_t(b));
                cycle.push_back(a);
                Vertex c = prev_ccw(b, a);
                a = b;
                b = c;
                if (a == v && b == w) break;
            }
            if (!(a == v && b == w)) return std::nullopt;  // face longer than a triangle
            if (cycle.size() != 3) return std::nullopt;
            out.emplace_back(cycle[0], cycle[1], cycle[2]);
        }
    }
    return out;
}

}  // namespace

ValidationReport validate(const Triangulation& t) {
    ValidationReport rep;
    int n = t.size();
    if (n < 3) {
        rep.fail("fewer than 3 vertices");
        return rep;
    }

    for (Vertex v = 0; v < n; ++v) {
        std::unordered_set<Vertex> seen;
        for (Vertex w : t.neighbors(v)) {
            if (w < 0 || w >= n) {
                rep.fail("neighbor id out of range at vertex " + std::to_string(v));
                return rep;
            }
            if (w == v) rep.fail("loop at vertex " + std::to_string(v));
            if (!seen.insert(w).second)
                rep.fail("parallel edge " + std::to_string(v) + "-" + std::to_string(w));
        }
    }
    if (!rep.ok) return rep;

    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : t.neighbors(v))
            if (!t.adjacent(w, v)) {
                rep.fail("asymmetric adjacency " + std::to_string(v) + "-" + std::to_string(w));
                return rep;
            }

    if (!connected(t)) {
        rep.fail("not connected");
        return rep;
    }

    int m = t.edge_count();
    if (m != 3 * n - 6)
        rep.fail("edge count " + std::to_string(m) + " != 3n-6 = " + std::to_string(3 * n - 6));

    auto fs = traverse_faces(t);
    if (!fs) {
        rep.fail("face traversal found a non-triangular face");
        return rep;
    }
    if (int(fs->size()) != 2 * n - 4)
        rep.fail("face count " + std::to_string(fs->size()) + " != 2n-4 = " +
                 std::to_string(2 * n - 4));

    const Face want = t.outerface().normalized();
    bool outer_found = false;
    for (const Face& f : *fs)
        if (f.normalized() == want) {
            outer_found = true;
            break;
        }
    if (!outer_found) rep.fail("outerface is not a face of the embedding");

    return rep;
}

EmbeddingIndex::EmbeddingIndex(const Triangulation& t) : t_(&t) {
    int n = t.size();
    for (Vertex v = 0; v < n; ++v) {
        const auto& r = t.neighbors(v);
        for (int i = 0; i < int(r.size()); ++i) pos_[key(v, r[i])] = i;
    }
    // Face walk identical to validate(); the input is assumed valid here.
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : t.neighbors(v)) {
            if (face_left_.count(key(v, w))) continue;
            Vertex a = v, b = w;
            Face f;
            for (int i = 0; i < 3; ++i) {
                f.v[i] = a;
                Vertex c = prev_ccw(b, a);
                a = b;
                b = c;
            }
            int id = int(faces_.size());
            faces_.push_back(f);
            for (int i = 0; i < 3; ++i) face_left_[key(f.v[i], f.v[(i + 1) % 3])] = id;
        }
    }
}

Vertex EmbeddingIndex::next_ccw(Vertex u, Vertex v) const {
    const auto& r = t_->neighbors(u);
    int i = pos_.at(key(u, v));
    return r[(i + 1) % r.size()];
}

Vertex EmbeddingIndex::prev_ccw(Vertex u, Vertex v) const {
    const auto& r = t_->neighbors(u);
    int i = pos_.at(key(u, v));
    return r[(i + r.size() - 1) % r.size()];
}

std::pair<Vertex, Vertex> EmbeddingIndex::seers(const Edge& e) const {
    return {third(e.u, e.v), third(e.v, e.u)};
}

std::pair<int, int> EmbeddingIndex::incident_faces(const Edge& e) const {
    return {face_left_.at(key(e.u, e.v)), face_left_.at(key(e.v, e.u))};
}

int EmbeddingIndex::face_left_of(Vertex u, Vertex v) const {
    return face_left_.at(key(u, v));
}

int EmbeddingIndex::face_index_of(const Face& f) const {
    auto it = face_left_.find(key(f.v[0], f.v[1]));
    if (it == face_left_.end()) return -1;
    return faces_[it->second].normalized() == f.normalized() ? it->second : -1;
}

std::vector<Face> faces(const Triangulation& t) {
    return EmbeddingIndex(t).faces();
}

DualGraph dual(const Triangulation& t) {
    EmbeddingIndex idx(t);
    DualGraph d;
    d.faces = idx.faces();
    d.adj.assign(d.faces.size(), {-1, -1, -1});
    for (int f = 0; f < int(d.faces.size()); ++f) {
        for (int i = 0; i < 3; ++i) {
            Vertex a = d.faces[f].v[i], b = d.faces[f].v[(i + 1) % 3];
            int g = idx.face_left_of(b, a);
            d.adj[f][i] = g;
            Edge e(a, b);
            if (!d.edge_faces.count(e)) d.edge_faces[e] = {f, g};
        }
    }
    return d;
}

bool DualGraph::has_bridge() const {
    int m = node_count();
    for (const auto& [e, fg] : edge_faces) {
        auto [cut_a, cut_b] = fg;
        std::vector<char> seen(m, 0);
        std::vector<int> stack{cut_a};
        seen[cut_a] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int g : adj[f]) {
                if ((f == cut_a && g == cut_b) || (f == cut_b && g == cut_a)) continue;
                if (!seen[g]) {
                    seen[g] = 1;
                    ++cnt;
                    stack.push_back(g);
                }
            }
        }
        if (cnt != m) return true;
    }
    return false;
}

uint64_t labeled_hash(const Triangulation& t) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(uint64_t(t.size()));
    for (Vertex v = 0; v < t.size(); ++v) {
        mix(0xfeedfaceull);
        for (Vertex w : t.neighbors(v)) mix(uint64_t(uint32_t(w)));
    }
    return h;
}

std::optional<Triangulation> triangulation_from_rotations(std::vector<std::vector<Vertex>> rot) {
    Triangulation t(std::move(rot), Face(-1, -1, -1));
    ValidationReport rep = validate(t);
    bool only_outer_bad = !rep.ok && rep.violations.size() == 1 &&
                          rep.violations.front().find("outerface") != std::string::npos;
    if (!rep.ok && !only_outer_bad) return std::nullopt;
    return t.with_outerface(faces(t).front());
}

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Triangulation parse_tri(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<std::vector<Vertex>> rot;
    std::vector<char> have;
    Face outer;
    bool have_outer = false;

    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (n < 0) {
            require(head == "n", ".tri: first line must be `n <count>`");
            require(bool(ls >> n) && n >= 3, ".tri: bad vertex count");
            rot.assign(size_t(n), {});
            have.assign(size_t(n), 0);
            continue;
        }
        if (head == "outer:") {
            Vertex a, b, c;
            require(bool(ls >> a >> b >> c), ".tri: bad outer line");
            outer = Face(a, b, c);
            have_outer = true;
            continue;
        }
        require(!head.empty() && head.back() == ':', ".tri: malformed line `" + line + "`");
        Vertex v = -1;
        try {
            v = std::stoi(head.substr(0, head.size() - 1));
        } catch (...) {
            throw domain_error(".tri: bad vertex id `" + head + "`");
        }
        require(v >= 0 && v < n, ".tri: vertex id out of range");
        require(!have[v], ".tri: duplicate rotation line for vertex " + std::to_string(v));
        have[v] = 1;
        Vertex w;
        while (ls >> w) {
            require(w >= 0 && w < n && w != v, ".tri: bad neighbor id");
            rot[v].push_back(w);
        }
    }
    require(n >= 3, ".tri: missing header");
    for (Vertex v = 0; v < n; ++v)
        require(have[v], ".tri: missing rotation line for vertex " + std::to_string(v));
    require(have_outer, ".tri: missing outer line");

    Triangulation t(std::move(rot), outer);
    ValidationReport rep = validate(t);
    if (!rep.ok) throw domain_error(".tri: invalid triangulation: " + rep.violations.front());
    return t;
}

Triangulation parse_tri_string(const std::string& text) {
    std::istringstream in(text);
    return parse_tri(in);
}

Triangulation load_tri(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), "cannot open " + path);
    return parse_tri(in);
}

std::string serialize_tri(const Triangulation& t) {
    std::ostringstream out;
    out << "n " << t.size() << "\n";
    for (Vertex v = 0; v < t.size(); ++v) {
        out << v << ":";
        for (Vertex w : t.neighbors(v)) out << " " << w;
        out << "\n";
    }
    const Face& f = t.outerface();
    out << "outer: " << f.v[0] << " " << f.v[1] << " " << f.v[2] << "\n";
    return out.str();
}

void save_tri(const Triangulation& t, const std::string& path) {
    std::ofstream out(path);
    require(bool(out), "cannot write " + path);
    out << serialize_tri(t);
}

}  // namespace simflip
