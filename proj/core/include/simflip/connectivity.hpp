#ifndef SIMFLIP_CONNECTIVITY_HPP
#define SIMFLIP_CONNECTIVITY_HPP

#include "simflip/triangulation.hpp"

namespace simflip {

/// Vertex connectivity >= k, decided by unit-vertex-capacity max-flow over all
/// relevant non-adjacent pairs. Exact; meant for desk-scale verification.
bool is_k_connected(const Triangulation& t, int k);

inline bool is_four_connected_exact(const Triangulation& t) { return is_k_connected(t, 4); }
inline bool is_five_connected_exact(const Triangulation& t) { return is_k_connected(t, 5); }

}  // namespace simflip

#endif
