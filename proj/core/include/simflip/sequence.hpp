#ifndef SIMFLIP_SEQUENCE_HPP
#define SIMFLIP_SEQUENCE_HPP

#include <iosfwd>

#include "simflip/flips.hpp"

namespace simflip {

/// Ordered list of simultaneous flips; each record's host is the previous
/// record's result.
struct FlipSequence {
    uint64_t start_hash = 0;
    std::vector<FlipRecord> steps;

    size_t length() const { return steps.size(); }
    size_t total_flipped() const;
    uint64_t end_hash() const { return steps.empty() ? start_hash : steps.back().result_hash; }

    /// Appends a record, checking the hash chain.
    void push(FlipRecord rec);
    /// Appends a whole tail sequence.
    void append(const FlipSequence& tail);
};

FlipSequence empty_sequence(const Triangulation& start);

/// Re-applies the sequence to `start`; every step is re-checked and validated.
Triangulation replay(const Triangulation& start, const FlipSequence& seq);

/// JSON-lines serialisation: one line per flip,
///   {"step": k, "removed": [u, v], "inserted": [x, y]}
void write_sequence_jsonl(std::ostream& out, const FlipSequence& seq);
std::string sequence_to_jsonl(const FlipSequence& seq);

/// Parsed form of a sequence file: the flip sets per step (with expected
/// insertions for verification).
std::vector<std::vector<FlipQuad>> parse_sequence_jsonl(std::istream& in);

/// Replays parsed steps; verifies each inserted edge matches the file.
Triangulation replay_quads(const Triangulation& start,
                           const std::vector<std::vector<FlipQuad>>& steps);

}  // namespace simflip

#endif
