#ifndef TTLAB_CERTIFIER_HPP
#define TTLAB_CERTIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ttlab/morphism.hpp"

namespace ttlab {

using Rational = boost::multiprecision::cpp_rational;

// Row convention: entry (e, e') counts occurrences of e' (either direction)
// in the image of e. Composition g after f has matrix M(f) * M(g).
struct IncidenceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::int64_t>> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return entries.at(r).at(c); }
    bool is_permutation() const;
    friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;
};

IncidenceMatrix incidence_matrix(const TrackMorphism& m);  // throws NotASelfMap
// Counts for any map, self-map or not.
IncidenceMatrix transition_matrix(const TrackMorphism& m);
IncidenceMatrix multiply(const IncidenceMatrix& a, const IncidenceMatrix& b);

// Edges whose image contains themselves.
std::vector<std::string> fixed_edge_points(const TrackMorphism& m);

struct Irreducibility {
    bool irreducible = false;
    // Proper invariant edge set when reducible: edges reachable from the
    // smallest-labelled sink component.
    std::vector<std::string> witness;
};

Irreducibility irreducibility(const IncidenceMatrix& m);
// Throws NotIrreducible. Checks powers up to (n-1)^2 + 1.
bool primitivity(const IncidenceMatrix& m);

struct Dilatation {
    long double lambda = 0;
    long double lower = 0;  // Collatz-Wielandt bracket
    long double upper = 0;
    std::vector<long double> lengths;  // M v = lambda v, unit sum
    std::vector<long double> widths;   // transpose eigenvector, unit sum
    std::size_t iterations = 0;

    long double width() const noexcept { return upper - lower; }
};

// Power iteration until the bracket is narrower than tol. Throws
// NotIrreducible unless the matrix is primitive, NoConvergence after
// max_iterations.
Dilatation dilatation(const IncidenceMatrix& m, long double tol = 1e-10L, std::size_t max_iterations = 100000);

struct CurveAction {
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t rotation = 0;     // letter offset of the reduced image on the target word
    std::size_t cusp_shift = 0;   // target cusp index of the image of the first cusp
    std::vector<std::size_t> cusp_images;  // target junction of each source cusp
    std::vector<std::size_t> cancellation; // folding depth at every source junction
    EdgeWord image;               // cyclically reduced image, aligned with the target word
};

struct BoundaryAction {
    std::vector<BoundaryCurve> curves;
    std::vector<CurveAction> actions;
    std::vector<std::size_t> permutation;  // curve -> image curve
};

// Throws BoundaryNotPreserved or AlignmentError.
BoundaryAction boundary_action(const TrackMorphism& m);

struct PeriodicPoint {
    std::size_t letter = 0;  // position inside the side
    Rational position;       // inside that letter, in (0, 1)
    std::vector<std::string> itinerary;  // marked letter at each step, back to the start
};

struct SideOrbit {
    std::size_t side = 0;     // global side index
    std::size_t curve = 0;
    std::size_t period = 0;
    std::size_t periodic_points = 0;
    std::vector<PeriodicPoint> points;
    std::size_t junction_points = 0;  // periodic points sitting on a letter end
    bool degenerate = false;          // a letter returns onto itself with no expansion
    std::vector<std::string> display; // successive images of the side, target side bracketed
};

struct SideDynamics {
    BoundaryAction action;
    std::vector<EdgeWord> sides;            // global side list, curve by curve
    std::vector<std::size_t> side_curve;    // curve of each side
    std::vector<std::size_t> permutation;   // side -> image side
    std::vector<SideOrbit> sides_report;    // one entry per side
    std::vector<std::string> warnings;

    bool single_periodic_point() const;
};

SideDynamics side_dynamics(const TrackMorphism& m);

struct SeparatrixOrbit {
    std::size_t curve = 0;
    std::size_t length = 0;
    std::vector<std::size_t> sides;
};

std::vector<SeparatrixOrbit> separatrix_orbits(const SideDynamics& sd);

enum class Verdict { PseudoAnosov, Reducible, Inconclusive };
std::string verdict_name(Verdict v);

struct Certificate {
    static constexpr int schema_version = 1;

    std::string map_name;
    Alphabet alphabet;
    std::vector<std::string> fixed_edges;
    bool fixed_point_free = false;
    bool irreducible = false;
    std::vector<std::string> invariant_subgraph;
    bool primitive = false;
    bool orientable = false;
    std::vector<int> singularity_type;
    bool single_boundary_periodic_point = false;
    std::vector<SeparatrixOrbit> separatrix_orbits;
    std::optional<Dilatation> dilatation;
    std::optional<SideDynamics> sides;
    Verdict verdict = Verdict::Inconclusive;
    std::string punctured_reading;
    std::string closed_reading;
    std::vector<std::string> diagnostics;
};

Certificate certify(const TrackMorphism& m, long double tol = 1e-10L);

std::string certificate_text(const Certificate& c);
std::string certificate_json(const Certificate& c);

} // namespace ttlab

#endif
