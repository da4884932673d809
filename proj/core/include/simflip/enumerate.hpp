#ifndef SIMFLIP_ENUMERATE_HPP
#define SIMFLIP_ENUMERATE_HPP

#include "simflip/canonical.hpp"
#include "simflip/triangulation.hpp"

namespace simflip {

/// Every plane triangulation on n vertices, one representative per isomorphism
/// class under `mode`. Walks the flip graph outward from the standard
/// triangulation; individual flips reach every triangulation of a given size.
std::vector<Triangulation> all_triangulations(int n, IsoMode mode = IsoMode::Reflect);

}  // namespace simflip

#endif
