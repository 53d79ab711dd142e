#include "ttlab/atlas.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ttlab/errors.hpp"

namespace ttlab {

namespace atlas_data {

const char* const boundary1 = "i j -h -d e a -c -l b f -g -k";
const char* const boundary2 = "i -k -g j b -d -c a e -l -h f";
const char* const prime_boundary1 = "c d -b -j i k -g -f h l -e -a";
const char* const prime_boundary2 = "l c -a -e d h -j -g k i -f -b";

const char* const first_loop = "i(b)/t(l); t(b)/i(d); t(k)/i(f); i(k)/t(j); t(e)/i(l); t(c)/i(a); "
                               "i(c)/t(a); i(e)/t(d); i(h)/t(f); t(h)/i(j); t(f)/i(g); i(j)/t(g)";
const char* const twist_ig = "t(f)/i(i); i(j)/t(i); i(k)/t(g); t(k)/i(g)";
const char* const twist_gi = "t(f)/i(g); i(j)/t(g); i(k)/t(i); t(k)/i(i)";

const std::map<std::string, std::string> phi1 = {
    {"a", "k"}, {"b", "f i j"}, {"c", "k g k"}, {"d", "j"},     {"e", "j b f"}, {"f", "l a"},
    {"g", "a"}, {"h", "l c d"}, {"i", "e"},     {"j", "a d"},   {"k", "d h l"}, {"l", "f"},
};

const std::map<std::string, std::string> phi2 = {
    {"a", "k"}, {"b", "f g j"}, {"c", "k i k"}, {"d", "j"},     {"e", "j b f"},     {"f", "l a e"},
    {"g", "a"}, {"h", "l c d"}, {"i", "e"},     {"j", "e a d"}, {"k", "a d h l a"}, {"l", "f"},
};

const std::map<std::string, std::string> phi3 = {
    {"a", "k"}, {"b", "f i j"}, {"c", "k g k"}, {"d", "j"},       {"e", "j b f"},         {"f", "l a e a"},
    {"g", "a"}, {"h", "l c d"}, {"i", "e"},     {"j", "a e a d"}, {"k", "e a d h l a e"}, {"l", "f"},
};

const std::map<std::string, std::string> swap_ig = {{"i", "g"}, {"g", "i"}};

// Recovered by matching the first loop against the base track; the loop is
// only legal in these labels.
const std::map<std::string, std::string> initial_to_base = {
    {"a", "k"}, {"b", "i"}, {"c", "g"}, {"d", "j"}, {"e", "b"}, {"f", "l"},
    {"g", "a"}, {"h", "c"}, {"i", "e"}, {"j", "d"}, {"k", "h"}, {"l", "f"},
};

} // namespace atlas_data

namespace {

const std::vector<std::string> kLabels = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};

int departure_dart(SignedEdge l) { return 2 * l.edge + (l.reversed ? 1 : 0); }
int arrival_dart(SignedEdge l) { return 2 * l.edge + (l.reversed ? 0 : 1); }

std::string power(const std::string& block, int n) {
    std::string out;
    for (int k = 0; k < n; ++k)
        out += (out.empty() ? "" : " ") + block;
    return out;
}

std::string join(std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts)
        if (!p.empty())
            out += (out.empty() ? "" : " ") + p;
    return out;
}

// Closed forms with m double twists (index 2m+1) and n double twists.
std::map<std::string, std::string> phi_text(int m) {
    auto t = atlas_data::phi1;
    t["f"] = join({"l a", power("e a", m)});
    t["j"] = join({power("a e", m), "a d"});
    t["k"] = join({power("e a", m), "d h l", power("a e", m)});
    return t;
}

std::map<std::string, std::string> psi_text(int n) {
    auto t = atlas_data::phi1;
    const std::string ig = power("i g", n), gi = power("g i", n);
    t["a"] = join({ig, "k", gi});
    t["b"] = join({"f", ig, "i", gi, "j"});
    t["c"] = join({ig, "k", gi, "g", ig, "k", gi});
    t["d"] = join({gi, "j"});
    t["e"] = join({gi, "j b f", ig});
    t["l"] = join({"f", ig});
    return t;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::string dart_text(const Alphabet& a, int d) {
    const EdgeEnd e = end_of(d);
    return std::string(1, end_tag(e.end)) + "(" + a.name(e.edge) + ")";
}

// Rotation from boundary words: after arriving along letter k the curve
// leaves along letter k+1 through the next end in ribbon order.
std::optional<std::vector<int>> rotation_from(const std::vector<EdgeWord>& words, std::size_t darts) {
    std::vector<int> next(darts, -1);
    for (const auto& w : words)
        for (std::size_t k = 0; k < w.size(); ++k) {
            const int a = arrival_dart(w[k]);
            if (next[static_cast<std::size_t>(a)] >= 0)
                return std::nullopt;
            next[static_cast<std::size_t>(a)] = departure_dart(w[(k + 1) % w.size()]);
        }
    std::vector<bool> hit(darts, false);
    for (int n : next) {
        if (n < 0 || hit[static_cast<std::size_t>(n)])
            return std::nullopt;
        hit[static_cast<std::size_t>(n)] = true;
    }
    return next;
}

} // namespace

TrainTrack reconstruct_base_track() {
    const Alphabet a(kLabels);
    const std::size_t darts = 2 * a.size();
    const EdgeWord w1 = parse_word(atlas_data::boundary1, a);
    const EdgeWord w2 = parse_word(atlas_data::boundary2, a);

    // The two curves may be written with opposite orientations; keep the
    // choices that give a well-defined rotation.
    std::vector<std::vector<int>> rotations;
    for (bool flip : {false, true})
        if (auto r = rotation_from({w1, flip ? inverse(w2) : w2}, darts))
            rotations.push_back(*r);
    if (rotations.size() != 1)
        throw InconsistentConstraints(rotations.empty()
                                          ? "boundary words do not define a ribbon structure in either orientation"
                                          : "boundary words define a ribbon structure in both orientations");
    const std::vector<int>& next = rotations.front();

    // Adjacency facts: the end where one letter arrives and the end where the
    // following letter leaves share a switch and lie on opposite sides.
    UnionFind uf(static_cast<int>(darts));
    std::vector<std::pair<int, int>> crossings;
    for (std::size_t d = 0; d < darts; ++d)
        uf.unite(static_cast<int>(d), next[d]);
    auto harvest = [&](const std::map<std::string, std::string>& images, const std::map<std::string, std::string>& rename) {
        for (const auto& [label, text] : images) {
            EdgeWord w = parse_word(text, a);
            for (auto& l : w)
                if (auto it = rename.find(a.name(l.edge)); it != rename.end())
                    l.edge = a.index(it->second);
            for (std::size_t k = 1; k < w.size(); ++k) {
                uf.unite(arrival_dart(w[k - 1]), departure_dart(w[k]));
                crossings.emplace_back(arrival_dart(w[k - 1]), departure_dart(w[k]));
            }
        }
    };
    harvest(atlas_data::phi1, {});
    harvest(atlas_data::phi3, {});
    harvest(atlas_data::phi2, atlas_data::swap_ig);  // written on the primed track
    harvest(phi_text(2), {});
    harvest(psi_text(1), {});
    harvest(psi_text(2), {});

    // Switch classes from the rotation must coincide with the union-find classes.
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(darts, false);
    for (std::size_t d = 0; d < darts; ++d) {
        if (seen[d])
            continue;
        std::vector<int> cyc;
        for (int x = static_cast<int>(d); !seen[static_cast<std::size_t>(x)]; x = next[static_cast<std::size_t>(x)]) {
            seen[static_cast<std::size_t>(x)] = true;
            cyc.push_back(x);
        }
        cycles.push_back(std::move(cyc));
    }
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (std::size_t c2 = c + 1; c2 < cycles.size(); ++c2)
            if (uf.find(cycles[c].front()) == uf.find(cycles[c2].front()))
                throw InconsistentConstraints("edge paths join " + dart_text(a, cycles[c].front()) + " and " +
                                              dart_text(a, cycles[c2].front()) +
                                              ", which the boundary words place at different switches");

    // Sides: terminal ends on one side, initial ends on the other, each a
    // contiguous run of the rotation.
    for (auto [x, y] : crossings)
        if ((x & 1) == (y & 1))
            throw InconsistentConstraints("edge path turns back between " + dart_text(a, x) + " and " +
                                          dart_text(a, y));
    std::vector<Switch> sws;
    for (auto& cyc : cycles) {
        std::size_t start = cyc.size();
        int runs = 0;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const int prev = cyc[(k + cyc.size() - 1) % cyc.size()];
            if ((cyc[k] & 1) != (prev & 1)) {
                ++runs;
                if ((cyc[k] & 1) == 0)
                    start = k;
            }
        }
        if (runs != 2 || start == cyc.size())
            throw InconsistentConstraints("ends at the switch of " + dart_text(a, cyc.front()) +
                                          " do not split into two sides");
        std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(start), cyc.end());
        Switch sw;
        for (int x : cyc)
            ((x & 1) == 0 ? sw.sideA : sw.sideB).push_back(end_of(x));
        std::reverse(sw.sideB.begin(), sw.sideB.end());
        sws.push_back(std::move(sw));
    }
    std::sort(sws.begin(), sws.end(), [](const Switch& x, const Switch& y) {
        return dart_of(x.sideA.front()) < dart_of(y.sideA.front());
    });
    for (std::size_t s = 0; s < sws.size(); ++s)
        sws[s].id = "v" + std::to_string(s + 1);
    return TrainTrack("tau", a, std::move(sws), {{"d1", w1}, {"d2", w2}});
}

namespace {

std::vector<int> label_permutation(const Alphabet& a, const std::map<std::string, std::string>& m, bool invert) {
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    for (const auto& [from, to] : m) {
        if (invert)
            p[static_cast<std::size_t>(a.index(to))] = a.index(from);
        else
            p[static_cast<std::size_t>(a.index(from))] = a.index(to);
    }
    return p;
}

TrackMorphism with_endpoints(TrackMorphism m, std::string name, const TrainTrack& source, const TrainTrack& target) {
    if (!same_labelled_track(m.source, source) || !same_labelled_track(m.target, target))
        throw InconsistentConstraints("map '" + name + "' does not run between '" + source.name() + "' and '" +
                                      target.name() + "'");
    m.name = std::move(name);
    m.source = source;
    m.target = target;
    // Switch numbering can differ between equally labelled tracks.
    m.vertex_images = infer_vertex_images(m).value_or(std::vector<int>{});
    return m;
}

TrackMorphism named_map(std::string name, const TrainTrack& src, const TrainTrack& tgt,
                        const std::map<std::string, std::string>& images) {
    return morphism_from_text(std::move(name), src, tgt, images);
}

} // namespace

const TrainTrack& tau() {
    static const TrainTrack t = reconstruct_base_track();
    return t;
}

const TrainTrack& tau_prime() {
    static const TrainTrack t = [] {
        const Alphabet& a = tau().alphabet();
        TrainTrack r = relabel(tau(), atlas_data::swap_ig).track.renamed("tau_prime");
        return r.with_declared_boundaries({{"d1", parse_word(atlas_data::prime_boundary1, a)},
                                           {"d2", parse_word(atlas_data::prime_boundary2, a)}});
    }();
    return t;
}

const TrainTrack& tau_initial() {
    static const TrainTrack t = [] {
        const auto p = label_permutation(tau().alphabet(), atlas_data::initial_to_base, true);
        return relabel(tau(), p).track.renamed("tau_initial").without_declared_boundaries();
    }();
    return t;
}

SplitSequence first_loop_sequence() { return parse_split_notation(atlas_data::first_loop); }
SplitSequence twist_ig_sequence() { return parse_split_notation(atlas_data::twist_ig); }
SplitSequence twist_gi_sequence() { return parse_split_notation(atlas_data::twist_gi); }

SplitSequence odd_family_sequence(int n) {
    if (n < 0)
        throw BadIndex("twist count must be non-negative");
    SplitSequence seq = first_loop_sequence();
    const auto ig = twist_ig_sequence(), gi = twist_gi_sequence();
    for (int k = 0; k < n; ++k) {
        seq.insert(seq.end(), ig.begin(), ig.end());
        seq.insert(seq.end(), gi.begin(), gi.end());
    }
    return seq;
}

TrackMorphism phi1_map() { return named_map("phi1", tau(), tau(), atlas_data::phi1); }
TrackMorphism phi2_map() { return named_map("phi2", tau_prime(), tau_prime(), atlas_data::phi2); }
TrackMorphism phi3_map() { return named_map("phi3", tau(), tau(), atlas_data::phi3); }

TrackMorphism alpha_map() {
    return with_endpoints(relabel(tau(), atlas_data::swap_ig).morphism, "alpha", tau(), tau_prime());
}

TrackMorphism initial_relabel_map() {
    const auto p = label_permutation(tau().alphabet(), atlas_data::initial_to_base, false);
    return with_endpoints(relabel(tau_initial(), p).morphism, "initial_to_base", tau_initial(), tau());
}

TrackMorphism twist_ig_map() {
    static const TrackMorphism m = [] {
        auto r = apply_sequence(tau(), twist_ig_sequence());
        return with_endpoints(r.morphism, "T(i,g)", tau_prime(), tau());
    }();
    return m;
}

TrackMorphism twist_gi_map() {
    static const TrackMorphism m = [] {
        auto r = apply_sequence(tau_prime(), twist_gi_sequence());
        return with_endpoints(r.morphism, "T(g,i)", tau(), tau_prime());
    }();
    return m;
}

TrackMorphism involution_map() {
    for (const auto& iso : automorphisms(tau(), {MatchMode::Embedded, false, true}))
        if (!iso.is_identity()) {
            TrackMorphism m = isomorphism_morphism(tau(), tau(), iso);
            m.name = "involution";
            return m;
        }
    throw InconsistentConstraints("base track has no non-trivial symmetry");
}

TrackMorphism close_on_base(const SplitResult& applied, const TrackIsomorphism& identification) {
    // identification: tau -> final; composite: final -> tau_initial; relabel: tau_initial -> tau.
    const TrackMorphism ident = isomorphism_morphism(tau(), applied.track, identification);
    TrackMorphism m = compose(initial_relabel_map(), compose(applied.morphism, ident));
    m.source = tau();
    m.target = tau();
    return m;
}

TrackIsomorphism identification_two() {
    static const TrackIsomorphism iso = [] {
        const auto applied = apply_sequence(tau_initial(), first_loop_sequence());
        const auto target = phi1_map();
        for (const auto& id : isomorphisms(tau(), applied.track))
            if (same_images(close_on_base(applied, id), target))
                return id;
        throw InconsistentConstraints("no identification of the first loop reproduces phi1");
    }();
    return iso;
}

namespace {

void check_index(int index) {
    if (index < 3 || index % 2 == 0)
        throw BadIndex("map index must be odd and at least 3, got " + std::to_string(index));
}

} // namespace

TrackMorphism phi_closed_form(int index) {
    check_index(index);
    return named_map("phi" + std::to_string(index), tau(), tau(), phi_text((index - 1) / 2));
}

TrackMorphism phi_chain(int index) {
    check_index(index);
    const TrackMorphism twice = compose(twist_ig_map(), twist_gi_map());
    TrackMorphism m = phi1_map();
    for (int k = 0; k < (index - 1) / 2; ++k)
        m = compose(m, twice);
    m.name = "phi" + std::to_string(index);
    return m;
}

TrackMorphism phi(int index) {
    TrackMorphism closed = phi_closed_form(index);
    if (!same_images(closed, phi_chain(index)))
        throw InconsistentConstraints("closed form of phi" + std::to_string(index) + " differs from its chain");
    return closed;
}

TrackMorphism psi_closed_form(int n) {
    if (n < 1)
        throw BadIndex("psi index must be at least 1, got " + std::to_string(n));
    return named_map("psi" + std::to_string(n), tau(), tau(), psi_text(n));
}

TrackMorphism psi_chain(int n) {
    if (n < 1)
        throw BadIndex("psi index must be at least 1, got " + std::to_string(n));
    const TrackMorphism twice = compose(twist_ig_map(), twist_gi_map());
    TrackMorphism m = phi1_map();
    for (int k = 0; k < n; ++k)
        m = compose(twice, m);
    m.name = "psi" + std::to_string(n);
    return m;
}

TrackMorphism psi(int n) {
    TrackMorphism closed = psi_closed_form(n);
    if (!same_images(closed, psi_chain(n)))
        throw InconsistentConstraints("closed form of psi" + std::to_string(n) + " differs from its chain");
    return closed;
}

// ---------------------------------------------------------------------------
// Entries

std::string_view kind_name(AtlasEntry::Kind kind) {
    switch (kind) {
    case AtlasEntry::Kind::Track:
        return "track";
    case AtlasEntry::Kind::Map:
        return "map";
    case AtlasEntry::Kind::Sequence:
        return "sequence";
    case AtlasEntry::Kind::Family:
        return "family";
    }
    return "?";
}

std::vector<std::string> atlas_names() {
    return {"tau", "tau_prime", "tau_initial", "involution", "S1", "phi1", "T_ig", "T_gi", "alpha",
            "initial_to_base", "phi2", "phi3", "S_2n+1", "psi_n"};
}

namespace {

std::optional<int> numeric_suffix(std::string_view name, std::string_view prefix) {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix)
        return std::nullopt;
    int v = 0;
    for (char c : name.substr(prefix.size())) {
        if (c < '0' || c > '9' || v > 100000)
            return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

AtlasEntry track_entry(std::string name, const TrainTrack& t, std::string note) {
    AtlasEntry e;
    e.name = std::move(name);
    e.kind = AtlasEntry::Kind::Track;
    e.note = std::move(note);
    e.track = t;
    return e;
}

AtlasEntry map_entry(std::string name, TrackMorphism m, std::string note) {
    AtlasEntry e;
    e.name = std::move(name);
    e.kind = AtlasEntry::Kind::Map;
    e.note = std::move(note);
    e.map = std::move(m);
    return e;
}

AtlasEntry seq_entry(std::string name, SplitSequence s, std::string note, const TrainTrack& start) {
    AtlasEntry e;
    e.name = std::move(name);
    e.kind = AtlasEntry::Kind::Sequence;
    e.note = std::move(note);
    e.sequence = std::move(s);
    e.track = start;
    return e;
}

} // namespace

AtlasEntry atlas(std::string_view name) {
    if (name == "tau")
        return track_entry("tau", tau(), "base track rebuilt from its boundary words");
    if (name == "tau_prime")
        return track_entry("tau_prime", tau_prime(), "base track with i and g exchanged");
    if (name == "tau_initial")
        return track_entry("tau_initial", tau_initial(), "base track in the labels the first loop is written in");
    if (name == "involution")
        return map_entry("involution", involution_map(), "order-two symmetry of the base track");
    if (name == "S1")
        return seq_entry("S1", first_loop_sequence(), "12-move loop, initial labels", tau_initial());
    if (name == "phi1")
        return map_entry("phi1", phi1_map(), "first loop closed with identification II; reducible");
    if (name == "T_ig")
        return seq_entry("T_ig", twist_ig_sequence(), "twist along i.g, base track to primed track", tau());
    if (name == "T_gi")
        return seq_entry("T_gi", twist_gi_sequence(), "twist along g.i, primed track to base track", tau_prime());
    if (name == "T(i,g)")
        return map_entry("T(i,g)", twist_ig_map(), "twist map from the primed track to the base track");
    if (name == "T(g,i)")
        return map_entry("T(g,i)", twist_gi_map(), "twist map from the base track to the primed track");
    if (name == "alpha")
        return map_entry("alpha", alpha_map(), "relabeling i <-> g");
    if (name == "initial_to_base")
        return map_entry("initial_to_base", initial_relabel_map(), "relabeling of the initial labels");
    if (name == "phi2")
        return map_entry("phi2", phi2_map(), "alpha o phi1 o T(i,g) on the primed track");
    if (name == "phi3")
        return map_entry("phi3", phi3_map(), "phi1 o T(i,g) o T(g,i)");
    if (name == "S_2n+1") {
        AtlasEntry e = seq_entry("S_2n+1", odd_family_sequence(1), "first loop then n double twists; shown for n = 1",
                                 tau_initial());
        e.kind = AtlasEntry::Kind::Family;
        return e;
    }
    if (name == "psi_n") {
        AtlasEntry e = map_entry("psi_n", psi(1), "phi1 followed by n double twists; shown for n = 1");
        e.kind = AtlasEntry::Kind::Family;
        return e;
    }
    if (auto n = numeric_suffix(name, "phi")) {
        if (*n == 1)
            return atlas("phi1");
        if (*n >= 3 && *n % 2 == 1)
            return map_entry("phi" + std::to_string(*n), phi(*n), "closed form, checked against its chain");
    }
    if (auto n = numeric_suffix(name, "psi"); n && *n >= 1)
        return map_entry("psi" + std::to_string(*n), psi(*n), "closed form, checked against its chain");
    if (auto n = numeric_suffix(name, "S_"); n && *n % 2 == 1)
        return seq_entry("S_" + std::to_string(*n), odd_family_sequence((*n - 1) / 2), "first loop then double twists",
                         tau_initial());
    throw UnknownEntry("no atlas entry named '" + std::string(name) + "'");
}

} // namespace ttlab
