#ifndef SIMFLIP_MATCHING_HPP
#define SIMFLIP_MATCHING_HPP

#include <vector>

namespace simflip {

/// Maximum matching in a general graph (Edmonds' blossom algorithm with a
/// greedy warm start). Returns mate[v] (-1 when unmatched).
std::vector<int> max_matching(int n, const std::vector<std::vector<int>>& adj);

}  // namespace simflip

#endif
