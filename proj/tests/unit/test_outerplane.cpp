#include <cmath>
#include <set>

#include "doctest.h"
#include "simflip/matching.hpp"
#include "simflip/outerplane.hpp"

using namespace simflip;

TEST_CASE("dual trees") {
    SUBCASE("triangle: one node") {
        OuterplaneGraph o = fan(3);
        DualTree d = dual_tree(o);
        CHECK(d.node_count() == 1);
        CHECK(d.diameter() == 0);
    }
    SUBCASE("fan D6: path of 4 nodes") {
        DualTree d = dual_tree(fan(6));
        CHECK(d.node_count() == 4);
        CHECK(d.max_degree() <= 2);
        CHECK(d.diameter() == 3);
    }
    SUBCASE("random n=8: tree with 6 nodes") {
        DualTree d = dual_tree(random_outerplane(8, 3));
        CHECK(d.node_count() == 6);
        CHECK(d.max_degree() <= 3);
    }
}

TEST_CASE("outer flip checks") {
    SUBCASE("any single internal edge is flippable") {
        for (auto& o : {fan(8), zigzag(9), random_outerplane(10, 4)})
            for (const Edge& c : o.chords) CHECK(check_outer_flipset(o, {c}).ok);
    }
    SUBCASE("boundary edges are rejected") {
        OuterplaneGraph o = fan(6);
        OuterFlipCheck chk = check_outer_flipset(o, make_flipset({Edge(0, 1)}));
        CHECK(!chk.ok);
    }
    SUBCASE("two chords of one internal face are rejected") {
        OuterplaneGraph o = fan(6);
        // chords 0-2 and 0-3 share the face (0,2,3)
        CHECK(!check_outer_flipset(o, make_flipset({Edge(0, 2), Edge(0, 3)})).ok);
    }
    SUBCASE("alternate chords of a fan flip together") {
        OuterplaneGraph o = fan(8);  // chords 0-2..0-6, dual path
        FlipSet s = make_flipset({Edge(0, 2), Edge(0, 4), Edge(0, 6)});
        CHECK(check_outer_flipset(o, s).ok);
        auto [o2, rec] = apply_outer_flipset(o, s);
        CHECK(validate_outer(o2).ok);
        CHECK(o2.boundary == o.boundary);
        CHECK(rec.quads.size() == 3);
    }
}

TEST_CASE("apply, identity and involution") {
    OuterplaneGraph o = zigzag(10);
    auto [same, rec0] = apply_outer_flipset(o, {});
    CHECK(same == o);
    CHECK(rec0.quads.empty());

    Edge c = o.chords[2];
    auto [o2, rec] = apply_outer_flipset(o, {c});
    REQUIRE(rec.quads.size() == 1);
    auto [o3, rec2] = apply_outer_flipset(o2, {rec.quads[0].inserted});
    CHECK(o3 == o);
    (void)rec2;
}

TEST_CASE("outer flips agree with the apex-triangulation brute force (n<=9)") {
    for (int n = 4; n <= 9; ++n) {
        auto polys = all_polygon_triangulations(n);
        // Catalan(n-2): 2, 5, 14, 42, 132, 429
        static const int catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
        CHECK(int(polys.size()) == catalan[n - 2]);
        for (const auto& o : polys) {
            Triangulation t = apex_triangulation(o);
            CHECK(validate(t).ok);
            const auto& cs = o.chords;
            int k = int(cs.size());
            // all chord subsets of size <= 3
            for (int i = -1; i < k; ++i)
                for (int j = i; j < k; ++j)
                    for (int l = j; l < k; ++l) {
                        std::vector<Edge> raw;
                        if (i >= 0) raw.push_back(cs[size_t(i)]);
                        if (j > i) raw.push_back(cs[size_t(j)]);
                        if (l > j) raw.push_back(cs[size_t(l)]);
                        FlipSet s = make_flipset(raw);
                        CHECK(check_outer_flipset(o, s).ok == brute_force_check(t, s));
                    }
        }
    }
}

TEST_CASE("max_outer_flip meets the (n-3)/3 bound") {
    SUBCASE("n=6 gives at least one edge") {
        CHECK(max_outer_flip(random_outerplane(6, 1)).size() >= 1);
    }
    SUBCASE("fan D10: at least 3") {
        FlipSet s = max_outer_flip(fan(10));
        CHECK(s.size() >= 3);
        CHECK(check_outer_flipset(fan(10), s).ok);
    }
    SUBCASE("random sizes") {
        for (int n : {7, 12, 25, 60})
            for (uint64_t seed = 0; seed < 3; ++seed) {
                OuterplaneGraph o = random_outerplane(n, seed);
                FlipSet s = max_outer_flip(o);
                CHECK(3 * int(s.size()) >= n - 3);
            }
    }
}

TEST_CASE("tight tree family") {
    SUBCASE("depth 1: star, 4 nodes, matching 1 of 3") {
        OuterplaneGraph o = tight_tree_family(1);
        DualTree d = dual_tree(o);
        CHECK(d.node_count() == 4);
        std::vector<std::pair<int, int>> te;
        for (const auto& [e, fg] : d.chord_faces) te.push_back(fg);
        CHECK(te.size() == 3);
    }
    SUBCASE("depth 3: 10 nodes, matching 3 of 9; depth 5: 34 nodes") {
        for (int depth : {3, 5}) {
            OuterplaneGraph o = tight_tree_family(depth);
            DualTree d = dual_tree(o);
            if (depth == 3) CHECK(d.node_count() == 10);
            if (depth == 5) CHECK(d.node_count() == 34);
            // non-leaves all have degree 3
            for (int f = 0; f < d.node_count(); ++f)
                CHECK((d.adj[size_t(f)].size() == 1 || d.adj[size_t(f)].size() == 3));

            // brute-force maximum matching in the dual equals edges/3
            std::vector<std::vector<int>> adj(size_t(d.node_count()));
            int edges = 0;
            for (const auto& [e, fg] : d.chord_faces) {
                adj[size_t(fg.first)].push_back(fg.second);
                adj[size_t(fg.second)].push_back(fg.first);
                ++edges;
            }
            auto mate = max_matching(d.node_count(), adj);
            int matched = 0;
            for (int f = 0; f < d.node_count(); ++f) matched += mate[size_t(f)] != -1;
            CHECK(matched / 2 == edges / 3);
            CHECK(edges % 3 == 0);

            // and max_outer_flip attains exactly (n-3)/3
            FlipSet s = max_outer_flip(o);
            CHECK(int(s.size()) == (o.size() - 3) / 3);
        }
    }
    CHECK_THROWS_AS(tight_tree_family(2), domain_error);
}

TEST_CASE("low degree independent set") {
    SUBCASE("fan: rim vertices") {
        LowDegreeIndependentSet low = low_degree_independent_set(fan(12));
        CHECK(6 * int(low.members.size()) >= 12);
        for (Vertex v : low.members) CHECK(v != 0);  // the dominant vertex has degree 11
    }
    SUBCASE("random n=60 reaches at least 10") {
        LowDegreeIndependentSet low = low_degree_independent_set(random_outerplane(60, 5));
        CHECK(low.members.size() >= 10);
    }
    SUBCASE("members split by degree") {
        OuterplaneGraph o = zigzag(15);
        LowDegreeIndependentSet low = low_degree_independent_set(o);
        std::unordered_map<Vertex, int> deg;
        for (Vertex v : o.boundary) deg[v] = 2;
        for (const Edge& e : o.chords) {
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int d = 0; d < 3; ++d)
            for (Vertex v : low.by_degree[size_t(d)]) CHECK(deg.at(v) == d + 2);
    }
}

TEST_CASE("reduce_diameter meets the c1 log2 n budget") {
    const double c1 = outerplane_c1();
    CHECK(c1 == doctest::Approx(7.6).epsilon(0.01));
    for (auto& [name, o] : std::vector<std::pair<std::string, OuterplaneGraph>>{
             {"fan200", fan(200)},
             {"zigzag150", zigzag(150)},
             {"random200", random_outerplane(200, 9)},
             {"triangle", fan(3)}}) {
        CAPTURE(name);
        auto [steps, reduced] = reduce_diameter(o);
        double bound = c1 * std::log2(std::max(2, o.size()));
        CHECK(double(steps.size()) <= bound);
        CHECK(double(dual_tree(reduced).diameter()) <= bound);
        CHECK(reduced.boundary == o.boundary);
        // replay the steps independently
        OuterplaneGraph replay = o;
        for (const auto& rec : steps) {
            std::vector<Edge> fl;
            for (const auto& q : rec.quads) fl.push_back(q.removed);
            auto [next, r2] = apply_outer_flipset(replay, make_flipset(fl));
            (void)r2;
            replay = std::move(next);
        }
        CHECK(replay == reduced);
    }
}

TEST_CASE("make_dominant") {
    SUBCASE("already dominant: no steps") {
        auto [steps, res] = make_dominant(fan(9), 0);
        CHECK(steps.empty());
        CHECK(res == fan(9));
    }
    SUBCASE("fan rim end becomes dominant within diameter steps") {
        OuterplaneGraph o = fan(9);
        int diam = dual_tree(o).diameter();
        auto [steps, res] = make_dominant(o, 4);
        CHECK(int(steps.size()) <= diam);
        // degree of 4 is n-1
        int deg = 2;
        for (const Edge& e : res.chords) deg += e.touches(4);
        CHECK(deg == 8);
    }
    SUBCASE("zigzag middle vertex") {
        OuterplaneGraph o = zigzag(12);
        auto [steps, res] = make_dominant(o, 6);
        int deg = 2;
        for (const Edge& e : res.chords) deg += e.touches(6);
        CHECK(deg == 11);
        CHECK(int(steps.size()) <= dual_tree(o).diameter());
    }
}

TEST_CASE("outer_morph") {
    const double c1 = outerplane_c1();
    SUBCASE("fan to itself is empty or tiny") {
        auto [seq, end] = outer_morph(fan(12), fan(12));
        CHECK(outer_isomorphic(end, fan(12)));
        CHECK(double(seq.size()) <= 4 * c1 * std::log2(12));
    }
    SUBCASE("fan to zigzag n=20") {
        auto [seq, end] = outer_morph(fan(20), zigzag(20));
        CHECK(outer_isomorphic(end, zigzag(20)));
        CHECK(double(seq.size()) <= 4 * c1 * std::log2(20));
    }
    SUBCASE("random pairs n=100") {
        auto [seq, end] = outer_morph(random_outerplane(100, 21), random_outerplane(100, 22));
        CHECK(outer_isomorphic(end, random_outerplane(100, 22)));
        CHECK(double(seq.size()) <= 4 * c1 * std::log2(100));
    }
    CHECK_THROWS_AS(outer_morph(fan(5), fan(6)), domain_error);
}

TEST_CASE("outer format round trip") {
    OuterplaneGraph o = random_outerplane(14, 8);
    std::string text = serialize_outer(o);
    OuterplaneGraph back = parse_outer_string(text);
    CHECK(back == o);
    CHECK_THROWS_AS(parse_outer_string("n 4\n0 1 2 3\n0 1\n"), domain_error);  // boundary edge chord
    CHECK_THROWS_AS(parse_outer_string("n 4\n0 1 2\n"), domain_error);
}

TEST_CASE("outer isomorphism is boundary preserving") {
    // rotations of the same polygon triangulation are isomorphic
    OuterplaneGraph o = random_outerplane(9, 2);
    OuterplaneGraph rot = o;
    std::rotate(rot.boundary.begin(), rot.boundary.begin() + 3, rot.boundary.end());
    CHECK(outer_isomorphic(o, rot));
    CHECK(!outer_isomorphic(fan(7), zigzag(7)));
}
