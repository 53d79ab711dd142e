#ifndef TTLAB_TRACK_HPP
#define TTLAB_TRACK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttlab/word.hpp"

namespace ttlab {

enum class End : std::uint8_t { Initial, Terminal };

inline char end_tag(End e) { return e == End::Initial ? 'i' : 't'; }

struct EdgeEnd {
    int edge = 0;
    End end = End::Initial;

    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

// Darts number edge ends: 2*edge for the initial end, 2*edge+1 for the terminal one.
inline int dart_of(EdgeEnd e) { return 2 * e.edge + (e.end == End::Terminal ? 1 : 0); }
inline EdgeEnd end_of(int dart) { return {dart / 2, (dart & 1) ? End::Terminal : End::Initial}; }
inline int opposite_dart(int dart) { return dart ^ 1; }

// A switch with its two ordered sides. The ribbon (cyclic) order of ends
// around the switch is sideA followed by sideB reversed.
struct Switch {
    std::string id;
    std::vector<EdgeEnd> sideA;
    std::vector<EdgeEnd> sideB;

    std::size_t valency() const noexcept { return sideA.size() + sideB.size(); }
};

struct DeclaredBoundary {
    std::string name;
    EdgeWord word;
};

struct ValidationReport {
    std::vector<std::string> problems;

    bool valid() const noexcept { return problems.empty(); }
};

class TrainTrack {
public:
    TrainTrack() = default;
    TrainTrack(std::string name, Alphabet alphabet, std::vector<Switch> switches,
               std::vector<DeclaredBoundary> declared = {});

    const std::string& name() const noexcept { return name_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Switch>& switches() const noexcept { return switches_; }
    const std::vector<DeclaredBoundary>& declared_boundaries() const noexcept { return declared_; }

    std::size_t edge_count() const noexcept { return alphabet_.size(); }
    std::size_t switch_count() const noexcept { return switches_.size(); }
    std::optional<std::size_t> find_switch(const std::string& id) const;

    TrainTrack renamed(std::string name) const;
    TrainTrack with_declared_boundaries(std::vector<DeclaredBoundary> declared) const;
    TrainTrack without_declared_boundaries() const;

private:
    std::string name_;
    Alphabet alphabet_;
    std::vector<Switch> switches_;
    std::vector<DeclaredBoundary> declared_;
};

// Dart-level view of a valid track: the ribbon rotation at every switch and
// the side of every edge end.
class Ribbon {
public:
    struct Place {
        int sw = -1;
        int side = 0;  // 0 = sideA, 1 = sideB
        int position = 0;
    };

    // Throws InvalidTrack when the track fails validation.
    explicit Ribbon(const TrainTrack& track);

    int dart_count() const noexcept { return static_cast<int>(place_.size()); }
    int switch_count() const noexcept { return switches_; }
    const Place& place(int dart) const { return place_.at(static_cast<std::size_t>(dart)); }
    int next(int dart) const { return next_.at(static_cast<std::size_t>(dart)); }
    int prev(int dart) const { return prev_.at(static_cast<std::size_t>(dart)); }
    bool same_side(int d1, int d2) const;
    int valency(int sw) const { return valency_.at(static_cast<std::size_t>(sw)); }

private:
    std::vector<Place> place_;
    std::vector<int> next_;
    std::vector<int> prev_;
    std::vector<int> valency_;
    int switches_ = 0;
};

ValidationReport validate(const TrainTrack& track);
// Throws InvalidTrack listing every problem.
void require_valid(const TrainTrack& track);

// A complementary boundary curve as a cyclic reduced word. Junction k sits
// after letter k, at the switch where letter k arrives.
struct BoundaryCurve {
    EdgeWord word;
    std::vector<bool> cusp_after;
    std::vector<int> junction_switch;

    std::size_t cusp_count() const;
    // Cusp junction indices in increasing order.
    std::vector<std::size_t> cusp_junctions() const;
    // Letters between consecutive cusps; side s starts after the s-th cusp junction.
    std::vector<EdgeWord> sides() const;
};

// Traces the boundary of the ribbon neighborhood. Each curve is rotated to
// start right after a cusp, choosing the lexicographically smallest such
// rotation; curves are sorted by word.
std::vector<BoundaryCurve> boundary_cycles(const TrainTrack& track);

struct EulerData {
    int vertices = 0;
    int edges = 0;
    int chi = 0;
    int boundaries = 0;
    std::optional<int> genus;  // empty when 2 - chi - b is odd or negative
    int components = 1;
};

EulerData euler_data(const TrainTrack& track);

// Sorted cusp counts of the boundary curves.
std::vector<int> singularity_type(const TrainTrack& track);

std::size_t cusp_count(const TrainTrack& track);

struct OrientationAssignment {
    std::vector<bool> sideA_is_in;  // per switch
    std::vector<bool> edge_forward; // induced direction equals the label orientation

    bool agrees_with_labels() const;
};

struct OrientationResult {
    std::optional<OrientationAssignment> assignment;
    // Edges of a cycle carrying an odd number of parity flips (when not orientable).
    std::vector<int> witness_edges;
    std::string witness;

    bool orientable() const noexcept { return assignment.has_value(); }
};

// Two-colours switch polarities so that every edge runs from an Out side to
// an In side. Unique up to global reversal on each connected component; the
// component's first switch is given sideA = In.
OrientationResult orientation(const TrainTrack& track);

enum class MatchMode { Abstract, Embedded };

// Edge e of the source goes to edge_map[e] of the target (reversed if flagged).
struct TrackIsomorphism {
    std::vector<SignedEdge> edge_map;
    std::vector<int> switch_map;
    bool mirror = false;

    bool is_identity() const;
    friend bool operator==(const TrackIsomorphism&, const TrackIsomorphism&) = default;
};

struct MatchOptions {
    MatchMode mode = MatchMode::Embedded;
    // Allow edges to be sent to reversed edges. Off by default: labelled
    // tracks carry their edge orientation.
    bool allow_reversal = false;
    // Embedded mode only: accept a global reflection of all ribbon orders.
    bool allow_mirror = true;
};

std::vector<TrackIsomorphism> isomorphisms(const TrainTrack& from, const TrainTrack& to, MatchOptions opts = {});
std::optional<TrackIsomorphism> isomorphism(const TrainTrack& from, const TrainTrack& to, MatchOptions opts = {});
std::vector<TrackIsomorphism> automorphisms(const TrainTrack& track, MatchOptions opts = {});

// Composition of isomorphisms: (second after first).
TrackIsomorphism compose(const TrackIsomorphism& second, const TrackIsomorphism& first);

// True when the two tracks carry the same labelled ribbon structure
// (the identity on labels is a non-mirror isomorphism).
bool same_labelled_track(const TrainTrack& a, const TrainTrack& b);

// Graphviz rendering: one node per switch, one labelled arc per edge.
std::string to_dot(const TrainTrack& track);

} // namespace ttlab

#endif
