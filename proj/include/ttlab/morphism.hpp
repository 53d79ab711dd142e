#ifndef TTLAB_MORPHISM_HPP
#define TTLAB_MORPHISM_HPP

#include <map>
#include <string>
#include <vector>

#include "ttlab/track.hpp"

namespace ttlab {

// Cellular map between labelled tracks. images[e] is the edge path of source
// edge e written in target letters; vertex_images[s] is the target switch of
// source switch s (inferred from the images when left empty).
struct TrackMorphism {
    std::string name;
    TrainTrack source;
    TrainTrack target;
    std::vector<EdgeWord> images;
    std::vector<int> vertex_images;

    bool is_self_map() const;
    const EdgeWord& image(std::string_view label) const;
};

TrackMorphism identity_morphism(const TrainTrack& track);

// Builds a morphism from label -> word text ("b" -> "f i j"). Edges missing
// from `images` map to themselves.
TrackMorphism morphism_from_text(std::string name, const TrainTrack& source, const TrainTrack& target,
                                 const std::map<std::string, std::string>& images);

// Cellularity, endpoint coherence and smoothness. Never throws.
ValidationReport check_morphism(const TrackMorphism& m);

// Vertex images implied by the image words; empty optional when the images
// disagree or the words leave the alphabet.
std::optional<std::vector<int>> infer_vertex_images(const TrackMorphism& m);

// Slide one end of an edge over an end of another edge at the same switch.
struct SplitMove {
    std::string slid;
    End slid_end = End::Terminal;
    std::string over;
    End over_end = End::Initial;

    friend bool operator==(const SplitMove&, const SplitMove&) = default;
};

using SplitSequence = std::vector<SplitMove>;

std::string format_move(const SplitMove& move);
std::string format_sequence(const SplitSequence& seq, std::string_view sep = "; ");
// Tokens END(LBL)/END(LBL) separated by whitespace or ';'.
SplitSequence parse_split_notation(std::string_view text);

// Legal elementary splits in (slid label, end, over label, end) order,
// labels compared by alphabet position and initial before terminal.
// Throws NoSplitAvailable when no switch has valency above 3.
std::vector<SplitMove> legal_splits(const TrainTrack& track);

struct SplitResult {
    TrainTrack track;
    TrackMorphism morphism;  // new track -> old track
};

// Throws IllegalMove naming the violated condition.
SplitResult apply_split(const TrainTrack& track, const SplitMove& move);

// Composite morphism from the final track to `track`.
SplitResult apply_sequence(const TrainTrack& track, const SplitSequence& seq);

// outer after inner. Throws ChainMismatch unless inner.target and
// outer.source carry the same labelled structure.
TrackMorphism compose(const TrackMorphism& outer, const TrackMorphism& inner);

// perm[e] is the new index of edge e. Returns the relabelled track and the
// isomorphism track -> relabelled. Throws NotABijection.
SplitResult relabel(const TrainTrack& track, const std::vector<int>& perm);
SplitResult relabel(const TrainTrack& track, const std::map<std::string, std::string>& perm);

// Morphism induced by a track isomorphism from -> to.
TrackMorphism isomorphism_morphism(const TrainTrack& from, const TrainTrack& to, const TrackIsomorphism& iso);

// True when both maps have equal tracks and identical image words.
bool same_images(const TrackMorphism& a, const TrackMorphism& b);

} // namespace ttlab

#endif
