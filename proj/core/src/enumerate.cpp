#include "simflip/enumerate.hpp"

#include <deque>
#include <map>

#include "simflip/flips.hpp"
#include "simflip/generate.hpp"

namespace simflip {

std::vector<Triangulation> all_triangulations(int n, IsoMode mode) {
    require(n >= 4, "all_triangulations: need n >= 4");
    std::vector<Triangulation> reps;
    std::map<CanonicalCode, bool> seen;

    std::deque<Triangulation> queue;
    Triangulation start = generate_standard(n);
    seen[canonical_code(start, mode)] = true;
    queue.push_back(start);
    reps.push_back(start);

    while (!queue.empty()) {
        Triangulation t = queue.front();
        queue.pop_front();
        EmbeddingIndex idx(t);
        for (const Edge& e : t.edges()) {
            if (!is_individually_flippable(idx, e)) continue;
            auto [next, rec] = apply_flipset(t, {e});
            (void)rec;
            CanonicalCode code = canonical_code(next, mode);
            if (seen.emplace(std::move(code), true).second) {
                reps.push_back(next);
                queue.push_back(next);
            }
        }
    }
    return reps;
}

}  // namespace simflip
