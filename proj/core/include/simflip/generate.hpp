#ifndef SIMFLIP_GENERATE_HPP
#define SIMFLIP_GENERATE_HPP

#include <cstdint>
#include <random>

#include "simflip/triangulation.hpp"

namespace simflip {

/// Builds a triangulation from a consistently oriented face list (each edge must
/// appear in exactly two faces, once per direction). Rotations are recovered by
/// chaining the faces around every vertex.
Triangulation from_faces(int n, const std::vector<Face>& face_list, int outer_index = 0);

Triangulation k4();
/// The 5-vertex triangulation (K5 minus an edge).
Triangulation k5_minus_edge();
Triangulation octahedron();
Triangulation icosahedron();

/// Standard triangulation: vertices 0 and 1 dominant, 2..n-1 a path.
/// Requires n >= 4.
Triangulation generate_standard(int n);

/// Deterministic pseudo-random triangulation: grow from K4 by inserting a
/// degree-3 vertex into a uniformly random face, then mix with 10n random
/// individual flips. Requires n >= 4.
Triangulation generate_random(int n, uint64_t seed);

/// Bounded uniform draw that does not depend on std::uniform_int_distribution
/// (whose output is implementation-defined).
uint64_t rng_below(std::mt19937_64& rng, uint64_t bound);

}  // namespace simflip

#endif
