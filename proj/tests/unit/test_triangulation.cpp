#include <set>
#include <sstream>

#include "doctest.h"
#include "simflip/generate.hpp"
#include "simflip/triangulation.hpp"

using namespace simflip;

TEST_CASE("K4 validates and has the right counts") {
    Triangulation t = k4();
    ValidationReport rep = validate(t);
    CHECK(rep.ok);
    CHECK(t.size() == 4);
    CHECK(t.edge_count() == 6);
    CHECK(faces(t).size() == 4);
}

TEST_CASE("asymmetric rotation entry is reported") {
    Triangulation t = k4();
    auto rot = t.rotation();
    rot[2] = {0, 3};  // drop 1 from 2's rotation
    Triangulation broken(rot, t.outerface());
    ValidationReport rep = validate(broken);
    CHECK(!rep.ok);
    bool mentions_asymmetry = false;
    for (const auto& v : rep.violations)
        if (v.find("asymmetric") != std::string::npos) mentions_asymmetry = true;
    CHECK(mentions_asymmetry);
}

TEST_CASE("octahedron: 6 vertices, 12 edges, 8 faces, bridgeless cubic dual") {
    Triangulation t = octahedron();
    CHECK(validate(t).ok);
    CHECK(t.size() == 6);
    CHECK(t.edge_count() == 12);
    CHECK(faces(t).size() == 8);
    for (Vertex v = 0; v < 6; ++v) CHECK(t.degree(v) == 4);

    DualGraph d = dual(t);
    CHECK(d.node_count() == 8);
    for (int f = 0; f < d.node_count(); ++f) {
        std::set<int> nb(d.adj[f].begin(), d.adj[f].end());
        CHECK(nb.size() == 3);
        CHECK(!nb.count(f));
    }
    CHECK(!d.has_bridge());
}

TEST_CASE("dual of K4 is K4") {
    DualGraph d = dual(k4());
    CHECK(d.node_count() == 4);
    for (int f = 0; f < 4; ++f) {
        std::set<int> nb(d.adj[f].begin(), d.adj[f].end());
        CHECK(nb.size() == 3);
        CHECK(!nb.count(f));
    }
    CHECK(!d.has_bridge());
}

TEST_CASE("standard triangulation counts and dual bridgelessness") {
    for (int n : {4, 6, 10, 37}) {
        Triangulation t = generate_standard(n);
        CHECK(validate(t).ok);
        CHECK(t.edge_count() == 3 * n - 6);
        CHECK(int(faces(t).size()) == 2 * n - 4);
        DualGraph d = dual(t);
        CHECK(d.node_count() == 2 * n - 4);
        CHECK(!d.has_bridge());
    }
}

TEST_CASE("tri format round trip") {
    Triangulation t = generate_random(20, 5);
    std::string text = serialize_tri(t);
    Triangulation back = parse_tri_string(text);
    CHECK(back == t);
    CHECK(serialize_tri(back) == text);
}

TEST_CASE("tri parser rejects bad input") {
    // outer names a non-face triple
    Triangulation t = generate_standard(6);
    std::string text = serialize_tri(t);
    auto pos = text.find("outer:");
    std::string bad = text.substr(0, pos) + "outer: 0 3 5\n";
    CHECK_THROWS_AS(parse_tri_string(bad), domain_error);

    // duplicate neighbour = parallel edge
    CHECK_THROWS_WITH_AS(
        parse_tri_string("n 4\n0: 1 2 3 1\n1: 0 2 3\n2: 0 1 3\n3: 0 1 2\nouter: 0 2 1\n"),
        doctest::Contains("parallel"), domain_error);

    // malformed line
    CHECK_THROWS_AS(parse_tri_string("n 4\nfrog\n"), domain_error);

    // asymmetric rotation
    CHECK_THROWS_AS(
        parse_tri_string("n 4\n0: 1 3 2\n1: 2 3 0\n2: 0 3\n3: 0 1 2\nouter: 0 2 1\n"),
        domain_error);
}

TEST_CASE("comments and blank lines are ignored") {
    Triangulation t = k4();
    std::string text = "# tetrahedron\n\n" + serialize_tri(t) + "# trailing\n";
    CHECK(parse_tri_string(text) == t);
}

TEST_CASE("with_outerface re-roots") {
    Triangulation t = generate_standard(8);
    std::vector<Face> fs = faces(t);
    Triangulation r = t.with_outerface(fs[3]);
    CHECK(validate(r).ok);
    CHECK(r.rotation() == t.rotation());
}

TEST_CASE("embedding index agrees with faces and seers on the octahedron") {
    Triangulation t = octahedron();
    EmbeddingIndex idx(t);
    CHECK(idx.face_count() == 8);
    // every edge appears in exactly two faces
    for (const Edge& e : t.edges()) {
        auto [f, g] = idx.incident_faces(e);
        CHECK(f != g);
        CHECK(idx.faces()[f].has_edge(e));
        CHECK(idx.faces()[g].has_edge(e));
        auto [x, y] = idx.seers(e);
        CHECK(x != y);
        // seers of an octahedron edge are an antipodal pair, never adjacent
        CHECK(!idx.adjacent(x, y));
    }
}
