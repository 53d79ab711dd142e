#ifndef TTLAB_SEARCH_HPP
#define TTLAB_SEARCH_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "ttlab/certifier.hpp"

namespace ttlab {

struct SearchConfig {
    std::size_t max_depth = 4;
    bool require_fixed_point_free = false;
    bool require_irreducible = false;
    MatchOptions match;
    // Worker threads over the first-level branches; 0 picks the hardware count.
    std::size_t threads = 1;
    // Abort with ResourceLimit past this many visited nodes (0 = unlimited).
    std::size_t max_nodes = 0;
};

struct LoopResult {
    SplitSequence sequence;
    TrackIsomorphism identification;  // seed -> final track
    TrackMorphism self_map;           // composite o identification
    Certificate certificate;
};

struct SearchStats {
    std::size_t nodes = 0;          // tracks visited below the seed
    std::size_t loop_nodes = 0;     // of those, isomorphic to the seed
    std::size_t identifications = 0;
    std::size_t emitted = 0;        // results passing the filters
    bool exhausted = false;         // every sequence up to max_depth was visited
};

// Depth-first over legal_splits order. Results reach `sink` in that order
// whatever the thread count. Throws ResourceLimit.
SearchStats search_loops(const TrainTrack& seed, const SearchConfig& cfg,
                         const std::function<void(const LoopResult&)>& sink);
std::vector<LoopResult> search_loops(const TrainTrack& seed, const SearchConfig& cfg, SearchStats* stats = nullptr);

// Rebuilds one result. Throws IllegalMove, or NotAnIdentification when
// `identification` is not an isomorphism from seed to the final track.
LoopResult replay(const TrainTrack& seed, const SplitSequence& sequence, const TrackIsomorphism& identification,
                  const MatchOptions& match = {});

TrackIsomorphism identity_isomorphism(const TrainTrack& track);

} // namespace ttlab

#endif
