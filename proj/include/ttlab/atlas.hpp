#ifndef TTLAB_ATLAS_HPP
#define TTLAB_ATLAS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttlab/morphism.hpp"

namespace ttlab {

// Rebuilds the genus-3 base track from its two boundary words and the
// adjacencies read off the published edge paths. Throws
// InconsistentConstraints when the data disagree.
TrainTrack reconstruct_base_track();

namespace atlas_data {

extern const char* const boundary1;
extern const char* const boundary2;
extern const char* const prime_boundary1;
extern const char* const prime_boundary2;
extern const char* const first_loop;      // 12 moves, initial labels
extern const char* const twist_ig;        // on the base track, ends on the primed track
extern const char* const twist_gi;        // on the primed track, ends on the base track
extern const std::map<std::string, std::string> phi1;
extern const std::map<std::string, std::string> phi2;
extern const std::map<std::string, std::string> phi3;
extern const std::map<std::string, std::string> swap_ig;
// Initial labels -> base labels.
extern const std::map<std::string, std::string> initial_to_base;

} // namespace atlas_data

// Cached tracks (all share the alphabet a..l).
const TrainTrack& tau();
const TrainTrack& tau_prime();
const TrainTrack& tau_initial();

SplitSequence first_loop_sequence();
SplitSequence twist_ig_sequence();
SplitSequence twist_gi_sequence();
// First loop followed by n copies of the 8-move double twist.
SplitSequence odd_family_sequence(int n);

TrackMorphism phi1_map();
TrackMorphism phi2_map();
TrackMorphism phi3_map();
TrackMorphism alpha_map();             // base -> primed relabeling
TrackMorphism initial_relabel_map();   // initial -> base relabeling
TrackMorphism twist_ig_map();          // primed -> base
TrackMorphism twist_gi_map();          // base -> primed
TrackMorphism involution_map();        // order-two symmetry of the base track

// Self-map on the base track obtained from a closed split sequence run on the
// initially labelled track: relabel o composite o identification.
// `identification` goes from the base track to the final track.
TrackMorphism close_on_base(const SplitResult& applied, const TrackIsomorphism& identification);
// The identification under which the first loop yields phi1.
TrackIsomorphism identification_two();

// index = 2m+1 with m >= 1; throws BadIndex otherwise. The closed form is
// checked against the composed chain before it is returned.
TrackMorphism phi(int index);
TrackMorphism phi_closed_form(int index);
TrackMorphism phi_chain(int index);

// n >= 1; throws BadIndex otherwise.
TrackMorphism psi(int n);
TrackMorphism psi_closed_form(int n);
TrackMorphism psi_chain(int n);

struct AtlasEntry {
    enum class Kind { Track, Map, Sequence, Family };
    std::string name;
    Kind kind = Kind::Track;
    std::string note;
    std::optional<TrainTrack> track;
    std::optional<TrackMorphism> map;
    std::optional<SplitSequence> sequence;
};

std::vector<std::string> atlas_names();
// Also accepts phiN (odd N >= 3), psiN (N >= 1) and S_N (odd N >= 1).
// Throws UnknownEntry.
AtlasEntry atlas(std::string_view name);
std::string_view kind_name(AtlasEntry::Kind kind);

} // namespace ttlab

#endif
