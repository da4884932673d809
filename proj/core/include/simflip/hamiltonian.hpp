#ifndef SIMFLIP_HAMILTONIAN_HPP
#define SIMFLIP_HAMILTONIAN_HPP

#include "simflip/triangulation.hpp"

namespace simflip {

/// Hamiltonian cycle as a vertex sequence (closing edge implied). Exact
/// backtracking with degree-two forcing and connectivity pruning; intended for
/// 4-connected triangulations (where a cycle always exists) and for n <= 5.
/// Throws postcondition_error if the search exhausts without a cycle.
std::vector<Vertex> hamiltonian_cycle(const Triangulation& t);

/// True when `cycle` visits every vertex exactly once along edges of t.
bool check_hamiltonian_cycle(const Triangulation& t, const std::vector<Vertex>& cycle);

}  // namespace simflip

#endif
