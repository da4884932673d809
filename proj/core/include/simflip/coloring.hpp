#ifndef SIMFLIP_COLORING_HPP
#define SIMFLIP_COLORING_HPP

#include "simflip/triangulation.hpp"

namespace simflip {

/// Proper vertex 4-colouring of a planar graph, by exact DSATUR backtracking
/// with Kempe-chain repair in the greedy phase. Colours are 0..3.
std::vector<int> planar_four_coloring(const Triangulation& t);

/// Proper vertex 3-colouring of a 2-degenerate graph (used for outerplane
/// subgraphs: a cycle plus non-crossing chords). Colours are 0..2.
std::vector<int> degenerate_three_coloring(int n, const std::vector<std::pair<int, int>>& edges);

/// Proper edge 3-colouring of a forest with maximum degree <= 3.
/// edges[i] = (u, v); returns a colour 0..2 per edge.
std::vector<int> tree_edge_three_coloring(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace simflip

#endif
