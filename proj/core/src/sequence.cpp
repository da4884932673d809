#include "simflip/sequence.hpp"

#include <sstream>

#include <json.hpp>

namespace simflip {

using nlohmann::json;

size_t FlipSequence::total_flipped() const {
    size_t total = 0;
    for (const FlipRecord& r : steps) total += r.size();
    return total;
}

void FlipSequence::push(FlipRecord rec) {
    uint64_t expect = end_hash();
    ensure(rec.host_hash == expect, "FlipSequence: record does not chain");
    steps.push_back(std::move(rec));
}

void FlipSequence::append(const FlipSequence& tail) {
    for (const FlipRecord& r : tail.steps) push(r);
}

FlipSequence empty_sequence(const Triangulation& start) {
    FlipSequence seq;
    seq.start_hash = labeled_hash(start);
    return seq;
}

Triangulation replay(const Triangulation& start, const FlipSequence& seq) {
    require(labeled_hash(start) == seq.start_hash, "replay: wrong starting triangulation");
    Triangulation cur = start;
    for (const FlipRecord& rec : seq.steps) {
        FlipSet s;
        for (const FlipQuad& q : rec.quads) s.push_back(q.removed);
        s = make_flipset(std::move(s));
        auto [next, rec2] = apply_flipset(cur, s);
        ensure(rec2.result_hash == rec.result_hash, "replay: diverged from the recorded run");
        cur = std::move(next);
    }
    return cur;
}

void write_sequence_jsonl(std::ostream& out, const FlipSequence& seq) {
    for (size_t k = 0; k < seq.steps.size(); ++k)
        for (const FlipQuad& q : seq.steps[k].quads) {
            json line = {{"step", k},
                         {"removed", {q.removed.u, q.removed.v}},
                         {"inserted", {q.inserted.u, q.inserted.v}}};
            out << line.dump() << "\n";
        }
}

std::string sequence_to_jsonl(const FlipSequence& seq) {
    std::ostringstream out;
    write_sequence_jsonl(out, seq);
    return out.str();
}

std::vector<std::vector<FlipQuad>> parse_sequence_jsonl(std::istream& in) {
    std::vector<std::vector<FlipQuad>> steps;
    std::string line;
    long last_step = -1;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j = json::parse(line);
        long k = j.at("step").get<long>();
        require(k == last_step || k == last_step + 1, "sequence: step indices must be ordered");
        if (k == last_step + 1) {
            steps.emplace_back();
            last_step = k;
        }
        auto rm = j.at("removed");
        auto ins = j.at("inserted");
        steps.back().push_back({Edge(rm.at(0).get<int>(), rm.at(1).get<int>()),
                                Edge(ins.at(0).get<int>(), ins.at(1).get<int>())});
    }
    return steps;
}

Triangulation replay_quads(const Triangulation& start,
                           const std::vector<std::vector<FlipQuad>>& steps) {
    Triangulation cur = start;
    for (const auto& quads : steps) {
        FlipSet s;
        for (const FlipQuad& q : quads) s.push_back(q.removed);
        auto [next, rec] = apply_flipset(cur, make_flipset(std::move(s)));
        // inserted edges must match the file
        std::unordered_map<Edge, Edge, EdgeHash> got;
        for (const FlipQuad& q : rec.quads) got[q.removed] = q.inserted;
        for (const FlipQuad& q : quads)
            require(got.at(q.removed) == q.inserted,
                    "sequence: recorded insertion does not match this graph");
        cur = std::move(next);
    }
    return cur;
}

}  // namespace simflip
