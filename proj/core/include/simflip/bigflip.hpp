#ifndef SIMFLIP_BIGFLIP_HPP
#define SIMFLIP_BIGFLIP_HPP

#include <optional>

#include "simflip/cover.hpp"

namespace simflip {

/// Per-edge bad/good classification: an edge is bad when some other edge is
/// seen by the same vertex pair.
struct EdgeClassification {
    std::unordered_map<Edge, std::vector<Edge>, EdgeHash> partners;

    bool is_bad(const Edge& e) const {
        auto it = partners.find(e);
        return it != partners.end() && !it->second.empty();
    }
};

EdgeClassification classify_edges(const Triangulation& t);

/// S_i: the edges of colour class i that are not in a bad pair with another
/// edge of the same class. Each S_i is flippable, and the edges of every
/// separating triangle all land in S_1 ∪ S_2 ∪ S_3.
std::array<FlipSet, 3> si_sets(const Triangulation& t, const TaitColoring& coloring);

/// Flippable set of at least ceil((n-2)/3) edges, built by shrinking the graph
/// with degree-3/4 reductions and lifting the solution back up; terminal
/// graphs take the largest S_i of a Tait colouring. The lower bound is a
/// theorem; its failure raises postcondition_error rather than returning a
/// weaker set.
FlipSet large_flip(const Triangulation& t);

struct MsfResult {
    int value = 0;        // best size found
    FlipSet witness;
    bool exact = false;   // false means the node budget ran out
};

/// Exact maximum simultaneous flip by branch and bound over edges with
/// consecutive/bad-pair exclusion and blocking implications.
MsfResult exact_max_flip(const Triangulation& t, long node_budget = 40'000'000);

/// Triangulation with a triangle inside every face of g0 (n-2 = 7(n0-2)),
/// together with a flippable witness of 6(n-2)/7 edges, the maximum.
std::pair<Triangulation, FlipSet> seven_family(const Triangulation& g0);

/// In a 5-connected triangulation the triangle cover itself is flippable and
/// has the maximum size n-2.
FlipSet five_connected_max_flip(const Triangulation& t);

/// Random-search helper: random triangulations hill-climbed to 5-connectivity.
std::optional<Triangulation> find_five_connected(int n, uint64_t seed, int attempts = 40);

}  // namespace simflip

#endif
