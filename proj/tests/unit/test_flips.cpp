#include <random>

#include "doctest.h"
#include "simflip/enumerate.hpp"
#include "simflip/flips.hpp"
#include "simflip/generate.hpp"

using namespace simflip;

TEST_CASE("edge views") {
    SUBCASE("K4: seers of any edge are the two remaining vertices") {
        Triangulation t = k4();
        for (const Edge& e : t.edges()) {
            EdgeView view = edge_view(t, e);
            auto [x, y] = view.seers();
            CHECK(x != y);
            CHECK(!Edge(x, y).touches(e.u));
            CHECK(!Edge(x, y).touches(e.v));
        }
    }
    SUBCASE("standard triangulation: edge between dominants is seen by its path neighbours") {
        Triangulation t = generate_standard(6);
        EdgeView view = edge_view(t, Edge(0, 1));
        auto [x, y] = view.seers();
        // dominants are 0,1; path is 2-3-4-5, the ends see the dominant edge
        CHECK(Edge(x, y) == Edge(2, 5));
    }
    SUBCASE("rejects non-edges and K3") {
        Triangulation t = generate_standard(6);
        CHECK_THROWS_AS(edge_view(t, Edge(2, 4)), domain_error);
    }
}

TEST_CASE("individual flippability and blocking") {
    SUBCASE("every K4 edge is blocked") {
        Triangulation t = k4();
        for (const Edge& e : t.edges()) {
            CHECK(!is_individually_flippable(t, e));
            auto blocker = blocking_edge(t, e);
            REQUIRE(blocker.has_value());
            // the blocker is the opposite edge
            CHECK(!blocker->touches(e.u));
            CHECK(!blocker->touches(e.v));
        }
    }
    SUBCASE("a blocking edge is itself flippable when n > 4") {
        for (uint64_t seed = 0; seed < 10; ++seed) {
            Triangulation t = generate_random(12, seed);
            EmbeddingIndex idx(t);
            for (const Edge& e : t.edges()) {
                auto blocker = blocking_edge(idx, e);
                if (blocker) CHECK(is_individually_flippable(idx, *blocker));
            }
        }
    }
}

TEST_CASE("bad pairs") {
    SUBCASE("standard triangulation path edges seen by both dominants") {
        Triangulation t = generate_standard(6);
        // path 2-3-4-5: edges 2-3 and 4-5 are both seen by {0,1}
        auto partners = bad_pair_partner(t, Edge(2, 3));
        CHECK(partners == std::vector<Edge>({Edge(3, 4), Edge(4, 5)}));
    }
    SUBCASE("octahedron: the equator edges of each polar axis all share their seers") {
        // Every equator edge around a polar axis has one incident face at each
        // pole, so all four of them are seen by the same pole pair.
        Triangulation t = octahedron();
        for (const Edge& e : t.edges()) {
            auto partners = bad_pair_partner(t, e);
            REQUIRE(partners.size() == 3);
            for (const Edge& p : partners) {
                auto back = bad_pair_partner(t, p);
                CHECK(std::find(back.begin(), back.end(), e) != back.end());
            }
        }
        CHECK(bad_pair_partner(t, Edge(0, 1)) ==
              std::vector<Edge>({Edge(0, 4), Edge(1, 3), Edge(3, 4)}));
    }
    SUBCASE("icosahedron (5-connected) has no bad pair") {
        Triangulation t = icosahedron();
        for (const Edge& e : t.edges()) CHECK(bad_pair_partner(t, e).empty());
    }
}

TEST_CASE("check_flipset catalogue") {
    SUBCASE("K4 opposite pair is flippable, result is K4 again") {
        Triangulation t = k4();
        FlipSet s = make_flipset({Edge(0, 1), Edge(2, 3)});
        CHECK(check_flipset(t, s).ok);
        auto [t2, rec] = apply_flipset(t, s);
        CHECK(validate(t2).ok);
        CHECK(t2.size() == 4);
        CHECK(rec.size() == 2);
        CHECK(!(t2 == t));  // different labelled embedding
    }
    SUBCASE("two edges of one face are consecutive") {
        Triangulation t = octahedron();
        Face f = faces(t).front();
        FlipSet s = make_flipset({Edge(f.v[0], f.v[1]), Edge(f.v[1], f.v[2])});
        FlipCheck chk = check_flipset(t, s);
        CHECK(!chk.ok);
        REQUIRE(!chk.violations.empty());
        CHECK(chk.violations.front().kind == Violation::Kind::Consecutive);
    }
    SUBCASE("standard triangulation bad pair") {
        Triangulation t = generate_standard(6);
        FlipCheck both = check_flipset(t, make_flipset({Edge(2, 3), Edge(4, 5)}));
        CHECK(!both.ok);
        CHECK(both.violations.front().kind == Violation::Kind::BadPair);
        // one of the pair alone: blocked by dominant edge 0-1, so still not ok
        FlipCheck alone = check_flipset(t, make_flipset({Edge(2, 3)}));
        CHECK(!alone.ok);
        CHECK(alone.violations.front().kind == Violation::Kind::BlockedWithoutBlocker);
        // together with the blocker it passes
        CHECK(check_flipset(t, make_flipset({Edge(2, 3), Edge(0, 1)})).ok);
    }
    SUBCASE("empty set is ok and applies as identity") {
        Triangulation t = generate_random(9, 1);
        CHECK(check_flipset(t, {}).ok);
        auto [t2, rec] = apply_flipset(t, {});
        CHECK(t2 == t);
        CHECK(rec.size() == 0);
    }
}

TEST_CASE("octahedron antipodal matching flips simultaneously") {
    Triangulation t = octahedron();
    // antipodal pairs are (0,3),(1,4),(2,5); a perfect matching avoiding them
    FlipSet s = make_flipset({Edge(0, 1), Edge(2, 3), Edge(4, 5)});
    CHECK(check_flipset(t, s).ok);
    auto [t2, rec] = apply_flipset(t, s);
    CHECK(validate(t2).ok);
    CHECK(t2.size() == 6);

    SUBCASE("inversion restores the labelled octahedron") {
        Triangulation back = apply_inverse(t2, rec);
        CHECK(back == t);
    }
}

TEST_CASE("brute force agrees with the characterisation (n<=6, |S|<=3)") {
    for (int n = 4; n <= 6; ++n) {
        for (const Triangulation& t : all_triangulations(n)) {
            std::vector<Edge> edges = t.edges();
            int m = int(edges.size());
            long checked = 0, flippable = 0;
            // all subsets of size <= 3
            for (int i = -1; i < m; ++i)
                for (int j = i; j < m; ++j)
                    for (int k = j; k < m; ++k) {
                        std::vector<Edge> raw;
                        if (i >= 0) raw.push_back(edges[size_t(i)]);
                        if (j > i) raw.push_back(edges[size_t(j)]);
                        if (k > j) raw.push_back(edges[size_t(k)]);
                        FlipSet s = make_flipset(raw);
                        bool pred = check_flipset(t, s).ok;
                        bool real = brute_force_check(t, s);
                        CHECK(pred == real);
                        ++checked;
                        flippable += real;
                    }
            CHECK(checked > 0);
            CHECK(flippable > 0);
        }
    }
}

TEST_CASE("invert round trips on random simultaneous flips") {
    std::mt19937_64 rng(2024);
    int done = 0;
    for (uint64_t seed = 0; done < 60; ++seed) {
        REQUIRE(seed < 4000);
        Triangulation t = generate_random(16, seed);
        EmbeddingIndex idx(t);
        std::vector<Edge> edges = t.edges();
        // greedily grow a random flippable set
        std::vector<Edge> chosen;
        for (int tries = 0; tries < 12; ++tries) {
            Edge cand = edges[rng_below(rng, edges.size())];
            std::vector<Edge> next = chosen;
            next.push_back(cand);
            if (check_flipset(idx, make_flipset(next)).ok) chosen = std::move(next);
        }
        if (chosen.empty()) continue;
        FlipSet s = make_flipset(chosen);
        auto [t2, rec] = apply_flipset(t, s);
        CHECK(validate(t2).ok);
        CHECK(t2.edge_count() == t.edge_count());
        Triangulation back = apply_inverse(t2, rec);
        CHECK(back == t);
        ++done;
    }
}

TEST_CASE("apply_flipset refuses bad sets and records mismatch") {
    Triangulation t = generate_standard(6);
    CHECK_THROWS_AS(apply_flipset(t, make_flipset({Edge(2, 3)})), domain_error);

    auto [t2, rec] = apply_flipset(t, make_flipset({Edge(2, 3), Edge(0, 1)}));
    CHECK(validate(t2).ok);
    // applying the inverse against the wrong host
    CHECK_THROWS_AS(apply_inverse(t, rec), domain_error);
}

TEST_CASE("K3 and flip preconditions") {
    std::vector<std::vector<Vertex>> rot = {{1, 2}, {2, 0}, {0, 1}};
    Triangulation k3(rot, Face(0, 1, 2));
    CHECK(validate(k3).ok);
    CHECK_THROWS_AS(edge_view(k3, Edge(0, 1)), domain_error);
    CHECK_THROWS_AS(check_flipset(k3, {}), domain_error);
}
