#ifndef TTLAB_IO_HPP
#define TTLAB_IO_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttlab/morphism.hpp"

namespace ttlab {

// Line-oriented text documents holding tracks, maps and split sequences.
//
//   [track]            name = tau / edges = a b c ...
//   [switch v1]        sideA = t(a) t(b) / sideB = i(c) i(d)
//   [boundary]         d1 = i j -h -d ...
//   [map phi1]         source = tau / target = tau / a = k / b = f i j ...
//   [sequence S1]      moves = i(b)/t(l); t(b)/i(d) ...
//
// '#' starts a comment. [switch] and [boundary] attach to the last [track].
struct Document {
    std::vector<TrainTrack> tracks;
    std::vector<TrackMorphism> maps;
    std::vector<std::pair<std::string, SplitSequence>> sequences;

    const TrainTrack* find_track(std::string_view name) const;
};

Document parse_document(std::string_view text);
// Throws FileError when the file cannot be read.
Document read_document(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string format_track(const TrainTrack& track);
// Emits the source and target tracks first unless include_tracks is false.
std::string format_map(const TrackMorphism& m, bool include_tracks = true);
std::string format_sequence_section(const std::string& name, const SplitSequence& seq);

std::string format_end(const Alphabet& alphabet, EdgeEnd end);

} // namespace ttlab

#endif
