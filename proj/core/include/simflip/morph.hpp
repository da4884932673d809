#ifndef SIMFLIP_MORPH_HPP
#define SIMFLIP_MORPH_HPP

#include "simflip/outerplane.hpp"
#include "simflip/sequence.hpp"

namespace simflip {

/// Bound constants: c1 = 2/log2(6/5) (~7.6), c2 = 2/log2(54/53) (~74.2).
double morph_c1();
double morph_c2();

/// An empty cycle of a triangulation with its chords classified. The interior
/// is the side of the cycle that contains no vertices; for a Hamiltonian cycle
/// (both sides bare) the side away from the outerface.
struct CycleChords {
    std::vector<Vertex> cycle;
    std::vector<Edge> internal_chords;
    std::vector<Edge> external_chords;
};

CycleChords classify_chords(const Triangulation& g, const std::vector<Vertex>& cycle);

/// G{C}: the cycle plus its internal chords, as a maximal outerplane graph.
OuterplaneGraph inner_subgraph(const Triangulation& g, const std::vector<Vertex>& cycle);
OuterplaneGraph inner_subgraph(const CycleChords& cc);

/// Extends a set of pairwise non-consecutive internal chords of an empty cycle
/// to a flippable set T with T disjoint from the cycle, |S∩T| >= |S|/3, and
/// T \ S made of external chords (the 3-coloured blocking set), |T\S| <= |S∩T|.
FlipSet flip_internal_matching(const Triangulation& g, const CycleChords& cc, const FlipSet& s);

/// Flips the triangulation, keeping H a Hamiltonian cycle, until the dual tree
/// of the inner subgraph has diameter <= c2*log2(n); uses <= c2*log2(n) steps.
std::pair<FlipSequence, Triangulation> internal_diameter_reduce(const Triangulation& g,
                                                                const std::vector<Vertex>& h);

/// Vertex with no external chords whose face path has minimum eccentricity in
/// the dual tree of G{H}; always exists.
Vertex pick_star_vertex(const Triangulation& g, const std::vector<Vertex>& h);

/// Makes v dominant with at most diameter(G{H}*) flips of internal chords seen
/// by v; afterwards every edge at v lies in X{H}. v must have no external
/// chords.
std::pair<FlipSequence, Triangulation> star(const Triangulation& g,
                                            const std::vector<Vertex>& h, Vertex v);

/// Transforms g into a standard triangulation (two dominant vertices) with at
/// most 1 + 2(c1+c2)*log2(n) simultaneous flips.
std::pair<FlipSequence, Triangulation> make_double_dominant(const Triangulation& g);

struct MorphResult {
    FlipSequence seq;
    Triangulation endpoint;  // embedding-isomorphic to the target
};

/// Sequence of at most 2 + 4(c1+c2)*log2(n) simultaneous flips turning g1 into
/// a labelled copy of g2. Every intermediate step is checked and validated.
MorphResult morph(const Triangulation& g1, const Triangulation& g2);

}  // namespace simflip

#endif
