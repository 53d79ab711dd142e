#include "ttlab/track.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "ttlab/errors.hpp"

namespace ttlab {

TrainTrack::TrainTrack(std::string name, Alphabet alphabet, std::vector<Switch> switches,
                       std::vector<DeclaredBoundary> declared)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), switches_(std::move(switches)),
      declared_(std::move(declared)) {}

std::optional<std::size_t> TrainTrack::find_switch(const std::string& id) const {
    for (std::size_t i = 0; i < switches_.size(); ++i)
        if (switches_[i].id == id)
            return i;
    return std::nullopt;
}

TrainTrack TrainTrack::renamed(std::string name) const {
    TrainTrack t = *this;
    t.name_ = std::move(name);
    return t;
}

TrainTrack TrainTrack::with_declared_boundaries(std::vector<DeclaredBoundary> declared) const {
    TrainTrack t = *this;
    t.declared_ = std::move(declared);
    return t;
}

TrainTrack TrainTrack::without_declared_boundaries() const { return with_declared_boundaries({}); }

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string end_text(const Alphabet& a, EdgeEnd e) {
    std::string s(1, end_tag(e.end));
    return s + "(" + a.name(e.edge) + ")";
}

// Structural problems only; declared boundaries are checked separately
// because they need a working ribbon.
std::vector<std::string> structural_problems(const TrainTrack& track) {
    std::vector<std::string> problems;
    const auto& a = track.alphabet();
    std::vector<int> count(2 * a.size(), 0);
    std::map<std::string, int> ids;
    for (const auto& sw : track.switches()) {
        if (++ids[sw.id] == 2)
            problems.push_back("duplicate switch id '" + sw.id + "'");
        if (sw.sideA.empty())
            problems.push_back("side empty: sideA of switch '" + sw.id + "'");
        if (sw.sideB.empty())
            problems.push_back("side empty: sideB of switch '" + sw.id + "'");
        for (const auto* side : {&sw.sideA, &sw.sideB})
            for (const auto& e : *side) {
                if (e.edge < 0 || static_cast<std::size_t>(e.edge) >= a.size()) {
                    problems.push_back("unknown edge index at switch '" + sw.id + "'");
                    continue;
                }
                ++count[static_cast<std::size_t>(dart_of(e))];
            }
    }
    for (std::size_t d = 0; d < count.size(); ++d) {
        if (count[d] != 1)
            problems.push_back("end multiplicity: " + end_text(a, end_of(static_cast<int>(d))) + " appears " +
                               std::to_string(count[d]) + " times");
    }
    return problems;
}

} // namespace

ValidationReport validate(const TrainTrack& track) {
    ValidationReport report;
    report.problems = structural_problems(track);
    if (!report.valid() || track.declared_boundaries().empty())
        return report;
    const auto curves = boundary_cycles(track);
    for (const auto& decl : track.declared_boundaries()) {
        const EdgeWord w = decl.word;
        const EdgeWord wi = inverse(w);
        bool found = false;
        for (const auto& c : curves)
            if (is_rotation_of(w, c.word) || is_rotation_of(wi, c.word))
                found = true;
        if (!found)
            report.problems.push_back("declared boundary '" + decl.name + "' is not a boundary curve: " +
                                      format_word(w, track.alphabet()));
    }
    return report;
}

void require_valid(const TrainTrack& track) {
    const auto problems = structural_problems(track);
    if (problems.empty())
        return;
    std::string msg = "invalid track '" + track.name() + "':";
    for (const auto& p : problems)
        msg += " " + p + ";";
    throw InvalidTrack(msg);
}

// ---------------------------------------------------------------------------
// Ribbon

Ribbon::Ribbon(const TrainTrack& track) {
    require_valid(track);
    const std::size_t darts = 2 * track.edge_count();
    place_.assign(darts, {});
    next_.assign(darts, -1);
    prev_.assign(darts, -1);
    switches_ = static_cast<int>(track.switch_count());
    for (std::size_t s = 0; s < track.switch_count(); ++s) {
        const auto& sw = track.switches()[s];
        std::vector<int> cyc;
        for (std::size_t k = 0; k < sw.sideA.size(); ++k) {
            const int d = dart_of(sw.sideA[k]);
            place_[static_cast<std::size_t>(d)] = {static_cast<int>(s), 0, static_cast<int>(k)};
            cyc.push_back(d);
        }
        for (std::size_t k = sw.sideB.size(); k-- > 0;) {
            const int d = dart_of(sw.sideB[k]);
            place_[static_cast<std::size_t>(d)] = {static_cast<int>(s), 1, static_cast<int>(k)};
            cyc.push_back(d);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const int d = cyc[k];
            const int n = cyc[(k + 1) % cyc.size()];
            next_[static_cast<std::size_t>(d)] = n;
            prev_[static_cast<std::size_t>(n)] = d;
        }
        valency_.push_back(static_cast<int>(cyc.size()));
    }
}

bool Ribbon::same_side(int d1, int d2) const {
    const auto& p = place(d1);
    const auto& q = place(d2);
    return p.sw == q.sw && p.side == q.side;
}

// ---------------------------------------------------------------------------
// Boundary curves

std::size_t BoundaryCurve::cusp_count() const {
    return static_cast<std::size_t>(std::count(cusp_after.begin(), cusp_after.end(), true));
}

std::vector<std::size_t> BoundaryCurve::cusp_junctions() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < cusp_after.size(); ++k)
        if (cusp_after[k])
            out.push_back(k);
    return out;
}

std::vector<EdgeWord> BoundaryCurve::sides() const {
    const auto cusps = cusp_junctions();
    std::vector<EdgeWord> out;
    const std::size_t n = word.size();
    for (std::size_t s = 0; s < cusps.size(); ++s) {
        const std::size_t from = (cusps[s] + 1) % n;
        const std::size_t to = cusps[(s + 1) % cusps.size()];
        EdgeWord side;
        for (std::size_t k = from;; k = (k + 1) % n) {
            side.push_back(word[k]);
            if (k == to)
                break;
        }
        out.push_back(std::move(side));
    }
    return out;
}

namespace {

BoundaryCurve rotate_curve(const BoundaryCurve& c, std::size_t shift) {
    BoundaryCurve r;
    const std::size_t n = c.word.size();
    r.word.resize(n);
    r.cusp_after.resize(n);
    r.junction_switch.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        r.word[t] = c.word[(t + shift) % n];
        r.cusp_after[t] = c.cusp_after[(t + shift) % n];
        r.junction_switch[t] = c.junction_switch[(t + shift) % n];
    }
    return r;
}

BoundaryCurve canonical_rotation(const BoundaryCurve& c) {
    const std::size_t n = c.word.size();
    std::optional<BoundaryCurve> best;
    const bool has_cusp = c.cusp_count() > 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (has_cusp && !c.cusp_after[(s + n - 1) % n])
            continue;
        BoundaryCurve r = rotate_curve(c, s);
        if (!best || r.word < best->word)
            best = std::move(r);
    }
    return best ? *best : c;
}

} // namespace

std::vector<BoundaryCurve> boundary_cycles(const TrainTrack& track) {
    const Ribbon rib(track);
    const int darts = rib.dart_count();
    std::vector<bool> seen(static_cast<std::size_t>(darts), false);
    std::vector<BoundaryCurve> out;
    for (int start = 0; start < darts; ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        BoundaryCurve c;
        int arrival = start;
        do {
            seen[static_cast<std::size_t>(arrival)] = true;
            const EdgeEnd e = end_of(arrival);
            c.word.push_back({e.edge, e.end == End::Initial});
            const int dep = rib.next(arrival);
            c.cusp_after.push_back(rib.same_side(arrival, dep));
            c.junction_switch.push_back(rib.place(arrival).sw);
            arrival = opposite_dart(dep);
        } while (arrival != start);
        out.push_back(canonical_rotation(c));
    }
    std::sort(out.begin(), out.end(), [](const BoundaryCurve& a, const BoundaryCurve& b) { return a.word < b.word; });
    return out;
}

namespace {

int component_count(const TrainTrack& track) {
    const Ribbon rib(track);
    std::vector<int> parent(track.switch_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (std::size_t e = 0; e < track.edge_count(); ++e) {
        const int a = find(rib.place(static_cast<int>(2 * e)).sw);
        const int b = find(rib.place(static_cast<int>(2 * e + 1)).sw);
        parent[static_cast<std::size_t>(a)] = b;
    }
    int n = 0;
    for (std::size_t s = 0; s < parent.size(); ++s)
        if (find(static_cast<int>(s)) == static_cast<int>(s))
            ++n;
    return n;
}

} // namespace

EulerData euler_data(const TrainTrack& track) {
    EulerData d;
    d.vertices = static_cast<int>(track.switch_count());
    d.edges = static_cast<int>(track.edge_count());
    d.chi = d.vertices - d.edges;
    d.boundaries = static_cast<int>(boundary_cycles(track).size());
    d.components = component_count(track);
    const int twice_genus = 2 * d.components - d.chi - d.boundaries;
    if (twice_genus >= 0 && twice_genus % 2 == 0)
        d.genus = twice_genus / 2;
    return d;
}

std::vector<int> singularity_type(const TrainTrack& track) {
    std::vector<int> out;
    for (const auto& c : boundary_cycles(track))
        out.push_back(static_cast<int>(c.cusp_count()));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t cusp_count(const TrainTrack& track) {
    std::size_t n = 0;
    for (const auto& sw : track.switches())
        n += (sw.sideA.empty() ? 0 : sw.sideA.size() - 1) + (sw.sideB.empty() ? 0 : sw.sideB.size() - 1);
    return n;
}

// ---------------------------------------------------------------------------
// Orientation

bool OrientationAssignment::agrees_with_labels() const {
    return std::all_of(edge_forward.begin(), edge_forward.end(), [](bool b) { return b; });
}

OrientationResult orientation(const TrainTrack& track) {
    const Ribbon rib(track);
    const std::size_t nsw = track.switch_count();
    const std::size_t ne = track.edge_count();
    // Constraint per edge: p(u) xor p(v) == 1 xor s_init xor s_term.
    struct Arc {
        int to;
        int edge;
        int parity;
    };
    std::vector<std::vector<Arc>> adj(nsw);
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& pi = rib.place(static_cast<int>(2 * e));
        const auto& pt = rib.place(static_cast<int>(2 * e + 1));
        const int parity = 1 ^ pi.side ^ pt.side;
        adj[static_cast<std::size_t>(pi.sw)].push_back({pt.sw, static_cast<int>(e), parity});
        if (pi.sw != pt.sw)
            adj[static_cast<std::size_t>(pt.sw)].push_back({pi.sw, static_cast<int>(e), parity});
    }
    std::vector<int> pol(nsw, -1), parent_sw(nsw, -1), parent_edge(nsw, -1), comp(nsw, -1);
    OrientationResult result;
    auto path_to_root = [&](int v) {
        std::vector<int> edges;
        while (parent_sw[static_cast<std::size_t>(v)] >= 0) {
            edges.push_back(parent_edge[static_cast<std::size_t>(v)]);
            v = parent_sw[static_cast<std::size_t>(v)];
        }
        return edges;
    };
    for (std::size_t root = 0; root < nsw; ++root) {
        if (pol[root] >= 0)
            continue;
        pol[root] = 0;
        comp[root] = static_cast<int>(root);
        std::queue<int> q;
        q.push(static_cast<int>(root));
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& arc : adj[static_cast<std::size_t>(u)]) {
                const int want = pol[static_cast<std::size_t>(u)] ^ arc.parity;
                if (arc.to == u) {
                    if (arc.parity != 0) {
                        result.witness_edges = {arc.edge};
                        result.witness = "loop edge " + track.alphabet().name(arc.edge) +
                                         " has both ends on one side of switch " +
                                         track.switches()[static_cast<std::size_t>(u)].id;
                        return result;
                    }
                    continue;
                }
                if (pol[static_cast<std::size_t>(arc.to)] < 0) {
                    pol[static_cast<std::size_t>(arc.to)] = want;
                    comp[static_cast<std::size_t>(arc.to)] = comp[static_cast<std::size_t>(u)];
                    parent_sw[static_cast<std::size_t>(arc.to)] = u;
                    parent_edge[static_cast<std::size_t>(arc.to)] = arc.edge;
                    q.push(arc.to);
                } else if (pol[static_cast<std::size_t>(arc.to)] != want) {
                    auto pu = path_to_root(u);
                    auto pv = path_to_root(arc.to);
                    // Drop the common tail shared by both root paths.
                    while (!pu.empty() && !pv.empty() && pu.back() == pv.back()) {
                        pu.pop_back();
                        pv.pop_back();
                    }
                    std::vector<int> cyc = pu;
                    cyc.push_back(arc.edge);
                    cyc.insert(cyc.end(), pv.rbegin(), pv.rend());
                    result.witness_edges = cyc;
                    std::string text = "parity conflict around cycle:";
                    for (int e : cyc)
                        text += " " + track.alphabet().name(e);
                    result.witness = text;
                    return result;
                }
            }
        }
    }
    // Pick the polarity of each component so its first edge keeps its label direction.
    std::vector<int> flip(nsw, -1);
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& pi = rib.place(static_cast<int>(2 * e));
        auto& f = flip[static_cast<std::size_t>(comp[static_cast<std::size_t>(pi.sw)])];
        if (f < 0)
            f = (pi.side == pol[static_cast<std::size_t>(pi.sw)]) ? 1 : 0;
    }
    for (std::size_t s = 0; s < nsw; ++s)
        pol[s] ^= std::max(0, flip[static_cast<std::size_t>(comp[s])]);
    OrientationAssignment a;
    a.sideA_is_in.resize(nsw);
    for (std::size_t s = 0; s < nsw; ++s)
        a.sideA_is_in[s] = pol[s] == 0;
    a.edge_forward.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& pi = rib.place(static_cast<int>(2 * e));
        const bool init_in = (pi.side == pol[static_cast<std::size_t>(pi.sw)]);
        a.edge_forward[e] = !init_in;
    }
    result.assignment = std::move(a);
    return result;
}

// ---------------------------------------------------------------------------
// Isomorphisms

bool TrackIsomorphism::is_identity() const {
    if (mirror)
        return false;
    for (std::size_t e = 0; e < edge_map.size(); ++e)
        if (edge_map[e].edge != static_cast<int>(e) || edge_map[e].reversed)
            return false;
    return true;
}

TrackIsomorphism compose(const TrackIsomorphism& second, const TrackIsomorphism& first) {
    TrackIsomorphism r;
    r.mirror = first.mirror != second.mirror;
    r.edge_map.resize(first.edge_map.size());
    for (std::size_t e = 0; e < first.edge_map.size(); ++e) {
        const SignedEdge m = first.edge_map[e];
        SignedEdge n = second.edge_map.at(static_cast<std::size_t>(m.edge));
        if (m.reversed)
            n = n.inverse();
        r.edge_map[e] = n;
    }
    r.switch_map.resize(first.switch_map.size());
    for (std::size_t s = 0; s < first.switch_map.size(); ++s)
        r.switch_map[s] = second.switch_map.at(static_cast<std::size_t>(first.switch_map[s]));
    return r;
}

namespace {

TrackIsomorphism from_dart_map(const std::vector<int>& f, const Ribbon& r1, const Ribbon& r2, bool mirror) {
    TrackIsomorphism iso;
    iso.mirror = mirror;
    const std::size_t ne = f.size() / 2;
    iso.edge_map.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const int img = f[2 * e];
        iso.edge_map[e] = {img / 2, (img & 1) != 0};
    }
    iso.switch_map.assign(static_cast<std::size_t>(r1.switch_count()), -1);
    for (std::size_t d = 0; d < f.size(); ++d)
        iso.switch_map[static_cast<std::size_t>(r1.place(static_cast<int>(d)).sw)] = r2.place(f[d]).sw;
    return iso;
}

void embedded_search(const Ribbon& r1, const Ribbon& r2, const MatchOptions& opts, bool mirror,
                     std::vector<TrackIsomorphism>& out) {
    const int n = r1.dart_count();
    std::vector<int> f(static_cast<std::size_t>(n), -1), g(static_cast<std::size_t>(n), -1);
    auto step2 = [&](int y) { return mirror ? r2.prev(y) : r2.next(y); };

    std::function<void()> rec = [&]() {
        int d = -1;
        for (int x = 0; x < n; ++x)
            if (f[static_cast<std::size_t>(x)] < 0) {
                d = x;
                break;
            }
        if (d < 0) {
            out.push_back(from_dart_map(f, r1, r2, mirror));
            return;
        }
        for (int c = 0; c < n; ++c) {
            if (g[static_cast<std::size_t>(c)] >= 0)
                continue;
            if (!opts.allow_reversal && (c & 1) != (d & 1))
                continue;
            std::vector<int> assigned;
            std::vector<std::pair<int, int>> work{{d, c}};
            bool ok = true;
            while (!work.empty() && ok) {
                auto [x, y] = work.back();
                work.pop_back();
                const int fx = f[static_cast<std::size_t>(x)];
                if (fx >= 0) {
                    ok = fx == y;
                    continue;
                }
                if (g[static_cast<std::size_t>(y)] >= 0 || (!opts.allow_reversal && (x & 1) != (y & 1)) ||
                    r1.valency(r1.place(x).sw) != r2.valency(r2.place(y).sw)) {
                    ok = false;
                    continue;
                }
                f[static_cast<std::size_t>(x)] = y;
                g[static_cast<std::size_t>(y)] = x;
                assigned.push_back(x);
                const int x1 = r1.next(x);
                const int y1 = step2(y);
                if (r1.same_side(x, x1) != r2.same_side(y, y1)) {
                    ok = false;
                    continue;
                }
                work.push_back({opposite_dart(x), opposite_dart(y)});
                work.push_back({x1, y1});
            }
            if (ok)
                rec();
            for (int x : assigned) {
                g[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])] = -1;
                f[static_cast<std::size_t>(x)] = -1;
            }
        }
    };
    rec();
}

void abstract_search(const Ribbon& r1, const Ribbon& r2, const MatchOptions& opts, std::vector<TrackIsomorphism>& out) {
    const int ne = r1.dart_count() / 2;
    const int ns = r1.switch_count();
    std::vector<int> edge_img(static_cast<std::size_t>(ne), -1);  // image dart of the initial end
    std::vector<bool> edge_used(static_cast<std::size_t>(ne), false);
    std::vector<int> sw_map(static_cast<std::size_t>(ns), -1), sw_inv(static_cast<std::size_t>(ns), -1);
    std::vector<int> sw_refs(static_cast<std::size_t>(ns), 0);
    std::vector<int> side_flip(static_cast<std::size_t>(ns), -1);

    // Try to bind dart x (source) to dart y (target); records undo info.
    struct Undo {
        int sw;
        bool bound_switch;
        bool bound_side;
    };
    auto bind = [&](int x, int y, std::vector<Undo>& undo) {
        const auto& p = r1.place(x);
        const auto& q = r2.place(y);
        const std::size_t s = static_cast<std::size_t>(p.sw);
        bool bound_switch = false, bound_side = false;
        if (sw_map[s] < 0) {
            if (sw_inv[static_cast<std::size_t>(q.sw)] >= 0 || r1.valency(p.sw) != r2.valency(q.sw))
                return false;
            sw_map[s] = q.sw;
            sw_inv[static_cast<std::size_t>(q.sw)] = p.sw;
            bound_switch = true;
        } else if (sw_map[s] != q.sw) {
            return false;
        }
        const int flip = p.side ^ q.side;
        if (side_flip[s] < 0) {
            side_flip[s] = flip;
            bound_side = true;
        } else if (side_flip[s] != flip) {
            if (bound_switch) {
                sw_inv[static_cast<std::size_t>(q.sw)] = -1;
                sw_map[s] = -1;
            }
            return false;
        }
        ++sw_refs[s];
        undo.push_back({p.sw, bound_switch, bound_side});
        return true;
    };
    auto unbind = [&](std::vector<Undo>& undo) {
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            const std::size_t s = static_cast<std::size_t>(it->sw);
            --sw_refs[s];
            if (it->bound_side)
                side_flip[s] = -1;
            if (it->bound_switch) {
                sw_inv[static_cast<std::size_t>(sw_map[s])] = -1;
                sw_map[s] = -1;
            }
        }
        undo.clear();
    };
    // Side sizes must agree once a switch pair is fixed.
    auto sides_compatible = [&](int sw) {
        const std::size_t s = static_cast<std::size_t>(sw);
        if (sw_map[s] < 0 || side_flip[s] < 0)
            return true;
        return true;
    };

    std::function<void(int)> rec = [&](int e) {
        if (e == ne) {
            std::vector<int> f(static_cast<std::size_t>(2 * ne));
            for (int k = 0; k < ne; ++k) {
                f[static_cast<std::size_t>(2 * k)] = edge_img[static_cast<std::size_t>(k)];
                f[static_cast<std::size_t>(2 * k + 1)] = opposite_dart(edge_img[static_cast<std::size_t>(k)]);
            }
            // Verify side partitions are carried onto side partitions.
            for (int x = 0; x < 2 * ne; ++x)
                for (int y = 0; y < 2 * ne; ++y)
                    if (r1.place(x).sw == r1.place(y).sw &&
                        r1.same_side(x, y) != r2.same_side(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
                        return;
            out.push_back(from_dart_map(f, r1, r2, false));
            return;
        }
        for (int c = 0; c < ne; ++c) {
            if (edge_used[static_cast<std::size_t>(c)])
                continue;
            for (int rev = 0; rev < (opts.allow_reversal ? 2 : 1); ++rev) {
                const int yi = 2 * c + rev;
                std::vector<Undo> undo;
                if (bind(2 * e, yi, undo) && bind(2 * e + 1, opposite_dart(yi), undo) &&
                    sides_compatible(r1.place(2 * e).sw)) {
                    edge_used[static_cast<std::size_t>(c)] = true;
                    edge_img[static_cast<std::size_t>(e)] = yi;
                    rec(e + 1);
                    edge_used[static_cast<std::size_t>(c)] = false;
                    edge_img[static_cast<std::size_t>(e)] = -1;
                }
                unbind(undo);
            }
        }
    };
    rec(0);
}

bool quick_reject(const TrainTrack& a, const TrainTrack& b) {
    if (a.edge_count() != b.edge_count() || a.switch_count() != b.switch_count())
        return true;
    auto sig = [](const TrainTrack& t) {
        std::vector<std::pair<std::size_t, std::size_t>> s;
        for (const auto& sw : t.switches())
            s.emplace_back(std::min(sw.sideA.size(), sw.sideB.size()), std::max(sw.sideA.size(), sw.sideB.size()));
        std::sort(s.begin(), s.end());
        return s;
    };
    return sig(a) != sig(b);
}

} // namespace

std::vector<TrackIsomorphism> isomorphisms(const TrainTrack& from, const TrainTrack& to, MatchOptions opts) {
    std::vector<TrackIsomorphism> out;
    if (quick_reject(from, to))
        return out;
    const Ribbon r1(from), r2(to);
    if (opts.mode == MatchMode::Embedded) {
        embedded_search(r1, r2, opts, false, out);
        if (opts.allow_mirror)
            embedded_search(r1, r2, opts, true, out);
    } else {
        abstract_search(r1, r2, opts, out);
    }
    // A reflection that coincides with a non-mirror map on labels is the same relabeling.
    std::vector<TrackIsomorphism> unique;
    for (auto& iso : out) {
        bool dup = false;
        for (const auto& u : unique)
            if (u.edge_map == iso.edge_map && u.switch_map == iso.switch_map)
                dup = true;
        if (!dup)
            unique.push_back(std::move(iso));
    }
    std::sort(unique.begin(), unique.end(), [](const TrackIsomorphism& a, const TrackIsomorphism& b) {
        return std::tie(a.mirror, a.edge_map) < std::tie(b.mirror, b.edge_map);
    });
    return unique;
}

std::optional<TrackIsomorphism> isomorphism(const TrainTrack& from, const TrainTrack& to, MatchOptions opts) {
    auto all = isomorphisms(from, to, opts);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

std::vector<TrackIsomorphism> automorphisms(const TrainTrack& track, MatchOptions opts) {
    return isomorphisms(track, track, opts);
}

bool same_labelled_track(const TrainTrack& a, const TrainTrack& b) {
    if (!(a.alphabet() == b.alphabet()) || a.switch_count() != b.switch_count())
        return false;
    if (!validate(a.without_declared_boundaries()).valid() || !validate(b.without_declared_boundaries()).valid())
        return false;
    const Ribbon ra(a), rb(b);
    for (int d = 0; d < ra.dart_count(); ++d) {
        if (ra.next(d) != rb.next(d))
            return false;
        if (ra.same_side(d, ra.next(d)) != rb.same_side(d, rb.next(d)))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DOT export

std::string to_dot(const TrainTrack& track) {
    const Ribbon rib(track);
    const auto& a = track.alphabet();
    std::ostringstream os;
    os << "digraph \"" << track.name() << "\" {\n";
    os << "  node [shape=circle];\n";
    for (const auto& sw : track.switches()) {
        std::string tip = "sideA:";
        for (const auto& e : sw.sideA)
            tip += " " + end_text(a, e);
        tip += " | sideB:";
        for (const auto& e : sw.sideB)
            tip += " " + end_text(a, e);
        const std::size_t cusps = (sw.sideA.size() - 1) + (sw.sideB.size() - 1);
        tip += " | cusps: " + std::to_string(cusps);
        os << "  \"" << sw.id << "\" [tooltip=\"" << tip << "\"];\n";
    }
    for (std::size_t e = 0; e < track.edge_count(); ++e) {
        const auto& from = track.switches()[static_cast<std::size_t>(rib.place(static_cast<int>(2 * e)).sw)];
        const auto& to = track.switches()[static_cast<std::size_t>(rib.place(static_cast<int>(2 * e + 1)).sw)];
        os << "  \"" << from.id << "\" -> \"" << to.id << "\" [label=\"" << a.name(static_cast<int>(e)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace ttlab
