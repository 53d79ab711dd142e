#include "ttlab/certifier.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ttlab/errors.hpp"

namespace ttlab {

// ---------------------------------------------------------------------------
// Matrices

bool IncidenceMatrix::is_permutation() const {
    const std::size_t n = size();
    std::vector<int> col(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int ones = 0;
        for (std::size_t c = 0; c < n; ++c) {
            const auto v = entries[r][c];
            if (v == 1) {
                ++ones;
                ++col[c];
            } else if (v != 0) {
                return false;
            }
        }
        if (ones != 1)
            return false;
    }
    return std::all_of(col.begin(), col.end(), [](int c) { return c == 1; });
}

IncidenceMatrix transition_matrix(const TrackMorphism& m) {
    IncidenceMatrix out;
    out.labels = m.source.alphabet().names();
    const std::size_t cols = m.target.edge_count();
    for (const auto& w : m.images) {
        std::vector<std::int64_t> row(cols, 0);
        for (const auto& l : w)
            ++row.at(static_cast<std::size_t>(l.edge));
        out.entries.push_back(std::move(row));
    }
    return out;
}

IncidenceMatrix incidence_matrix(const TrackMorphism& m) {
    if (!(m.source.alphabet() == m.target.alphabet()) || !m.is_self_map())
        throw NotASelfMap("'" + m.name + "' maps '" + m.source.name() + "' to a different track '" + m.target.name() +
                          "'");
    return transition_matrix(m);
}

IncidenceMatrix multiply(const IncidenceMatrix& a, const IncidenceMatrix& b) {
    IncidenceMatrix out;
    out.labels = a.labels;
    const std::size_t n = a.size(), k = b.size(), cols = k ? b.entries[0].size() : 0;
    out.entries.assign(n, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (const auto v = a.entries[i][j])
                for (std::size_t c = 0; c < cols; ++c)
                    out.entries[i][c] += v * b.entries[j][c];
    return out;
}

std::vector<std::string> fixed_edge_points(const TrackMorphism& m) {
    std::vector<std::string> out;
    for (std::size_t e = 0; e < m.images.size(); ++e)
        if (occurrences(m.images[e], static_cast<int>(e)) > 0)
            out.push_back(m.source.alphabet().name(static_cast<int>(e)));
    return out;
}

namespace {

// Tarjan; components in reverse topological order (sinks first).
std::vector<std::vector<int>> strong_components(const IncidenceMatrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        const auto sv = static_cast<std::size_t>(v);
        index[sv] = low[sv] = counter++;
        stack.push_back(v);
        on[sv] = true;
        for (int w = 0; w < n; ++w) {
            if (m.entries[sv][static_cast<std::size_t>(w)] == 0)
                continue;
            const auto sw = static_cast<std::size_t>(w);
            if (index[sw] < 0) {
                visit(w);
                low[sv] = std::min(low[sv], low[sw]);
            } else if (on[sw]) {
                low[sv] = std::min(low[sv], index[sw]);
            }
        }
        if (low[sv] == index[sv]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(w)] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] < 0)
            visit(v);
    return comps;
}

} // namespace

Irreducibility irreducibility(const IncidenceMatrix& m) {
    Irreducibility out;
    const std::size_t n = m.size();
    if (n == 0)
        return out;
    const auto comps = strong_components(m);
    if (comps.size() == 1 && (n > 1 || m.entries[0][0] > 0)) {
        out.irreducible = true;
        return out;
    }
    std::vector<int> comp_of(n, -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c])
            comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    const std::vector<int>* best = nullptr;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool sink = true;
        for (int v : comps[c])
            for (std::size_t w = 0; w < n; ++w)
                if (m.entries[static_cast<std::size_t>(v)][w] > 0 && comp_of[w] != static_cast<int>(c))
                    sink = false;
        if (sink && (!best || comps[c].front() < best->front()))
            best = &comps[c];
    }
    for (int v : *best)
        out.witness.push_back(m.labels.at(static_cast<std::size_t>(v)));
    return out;
}

bool primitivity(const IncidenceMatrix& m) {
    if (!irreducibility(m).irreducible)
        throw NotIrreducible("primitivity needs an irreducible matrix");
    const std::size_t n = m.size();
    using Bool = std::vector<std::vector<char>>;
    Bool base(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            base[i][j] = m.entries[i][j] > 0;
    Bool cur = base;
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n && positive; ++j)
                positive = cur[i][j] != 0;
        if (positive)
            return true;
        Bool next(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (cur[i][j])
                    for (std::size_t c = 0; c < n; ++c)
                        next[i][c] = next[i][c] || base[j][c];
        cur = std::move(next);
    }
    return false;
}

namespace {

struct PowerResult {
    long double lower, upper;
    std::vector<long double> vec;
    std::size_t iterations;
};

PowerResult power_iteration(const std::vector<std::vector<std::int64_t>>& a, long double tol, std::size_t max_iterations) {
    const std::size_t n = a.size();
    std::vector<long double> v(n, 1.0L / static_cast<long double>(n));
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        std::vector<long double> w(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (a[i][j])
                    w[i] += static_cast<long double>(a[i][j]) * v[j];
        long double lo = std::numeric_limits<long double>::infinity(), hi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long double r = w[i] / v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        const long double sum = std::accumulate(w.begin(), w.end(), 0.0L);
        for (auto& x : w)
            x /= sum;
        if (hi - lo < tol)
            return {lo, hi, w, it};
        v = std::move(w);
    }
    throw NoConvergence("power iteration did not reach the requested width", max_iterations);
}

} // namespace

Dilatation dilatation(const IncidenceMatrix& m, long double tol, std::size_t max_iterations) {
    if (!primitivity(m))
        throw NotIrreducible("dilatation needs a primitive matrix");
    const std::size_t n = m.size();
    auto right = power_iteration(m.entries, tol, max_iterations);
    std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = m.entries[j][i];
    auto left = power_iteration(t, tol, max_iterations);
    Dilatation d;
    d.lower = std::max(right.lower, left.lower);
    d.upper = std::min(right.upper, left.upper);
    if (d.lower > d.upper)
        std::swap(d.lower, d.upper);
    d.lambda = (d.lower + d.upper) / 2;
    d.lengths = std::move(right.vec);
    d.widths = std::move(left.vec);
    d.iterations = std::max(right.iterations, left.iterations);
    return d;
}

// ---------------------------------------------------------------------------
// Boundary action

namespace {

// Unreduced image of one curve with provenance, plus its cyclic reduction.
struct CurveImage {
    EdgeWord letters;                       // unreduced concatenation
    std::vector<std::size_t> origin;        // source letter of each position
    std::vector<std::size_t> piece;         // piece index inside that letter's image
    std::vector<std::size_t> start;         // first position of each source letter's image
    std::vector<std::size_t> length;        // image length of each source letter
    std::vector<bool> cancelled;
    std::vector<std::size_t> survivors;     // positions, in order
    std::vector<long> survivor_index;       // position -> index in survivors or -1
};

CurveImage image_of(const BoundaryCurve& c, const TrackMorphism& m) {
    CurveImage ci;
    for (std::size_t k = 0; k < c.word.size(); ++k) {
        const SignedEdge l = c.word[k];
        const EdgeWord& img = m.images.at(static_cast<std::size_t>(l.edge));
        EdgeWord part = l.reversed ? inverse(img) : img;
        ci.start.push_back(ci.letters.size());
        ci.length.push_back(part.size());
        for (std::size_t t = 0; t < part.size(); ++t) {
            ci.letters.push_back(part[t]);
            ci.origin.push_back(k);
            ci.piece.push_back(t);
        }
    }
    const std::size_t L = ci.letters.size();
    ci.cancelled.assign(L, false);
    std::vector<std::size_t> stack;
    for (std::size_t p = 0; p < L; ++p) {
        if (!stack.empty() && ci.letters[stack.back()] == ci.letters[p].inverse()) {
            ci.cancelled[stack.back()] = ci.cancelled[p] = true;
            stack.pop_back();
        } else {
            stack.push_back(p);
        }
    }
    std::size_t lo = 0, hi = stack.size();
    while (hi - lo >= 2 && ci.letters[stack[lo]] == ci.letters[stack[hi - 1]].inverse()) {
        ci.cancelled[stack[lo]] = ci.cancelled[stack[hi - 1]] = true;
        ++lo;
        --hi;
    }
    ci.survivor_index.assign(L, -1);
    for (std::size_t k = lo; k < hi; ++k) {
        ci.survivor_index[stack[k]] = static_cast<long>(ci.survivors.size());
        ci.survivors.push_back(stack[k]);
    }
    return ci;
}

std::string word_text(const EdgeWord& w, const Alphabet& a) { return format_word(w, a); }

} // namespace

BoundaryAction boundary_action(const TrackMorphism& m) {
    if (!m.is_self_map())
        throw NotASelfMap("boundary action needs a self-map");
    BoundaryAction out;
    out.curves = boundary_cycles(m.source);
    const auto& a = m.source.alphabet();
    std::vector<bool> hit(out.curves.size(), false);
    for (std::size_t ci = 0; ci < out.curves.size(); ++ci) {
        const BoundaryCurve& c = out.curves[ci];
        const CurveImage img = image_of(c, m);
        const std::size_t L = img.letters.size();
        const std::size_t n = c.word.size();
        if (img.survivors.empty())
            throw BoundaryNotPreserved("boundary curve " + std::to_string(ci + 1) + " collapses under '" + m.name + "'");
        EdgeWord R;
        for (std::size_t p : img.survivors)
            R.push_back(img.letters[p]);
        const std::size_t mlen = R.size();

        // Gap after source junction k sits before position start[k+1].
        std::vector<std::size_t> gap(n);
        for (std::size_t k = 0; k < n; ++k)
            gap[k] = (k + 1 < n ? img.start[k + 1] : L) % L;
        // Cancelled runs: mark the run id of every cancelled position.
        std::vector<long> run(L, -1);
        std::vector<std::size_t> run_len;
        {
            std::size_t first_survivor = img.survivors.front();
            long id = -1;
            for (std::size_t s = 1; s <= L; ++s) {
                const std::size_t p = (first_survivor + s) % L;
                if (img.cancelled[p]) {
                    if (id < 0 || !img.cancelled[(p + L - 1) % L]) {
                        id = static_cast<long>(run_len.size());
                        run_len.push_back(0);
                    }
                    run[p] = id;
                    ++run_len[static_cast<std::size_t>(id)];
                }
            }
        }
        std::vector<int> cusps_in_run(run_len.size(), 0);
        CurveAction act;
        act.source = ci;
        act.cancellation.assign(n, 0);
        std::vector<std::size_t> image_junction(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t g = gap[k];
            const std::size_t before = (g + L - 1) % L;
            if (run[g] >= 0 && run[g] == run[before]) {
                act.cancellation[k] = run_len[static_cast<std::size_t>(run[g])] / 2;
                if (c.cusp_after[k])
                    ++cusps_in_run[static_cast<std::size_t>(run[g])];
            }
            std::size_t p = g;
            while (img.survivor_index[p] < 0)
                p = (p + 1) % L;
            image_junction[k] = (static_cast<std::size_t>(img.survivor_index[p]) + mlen - 1) % mlen;
        }
        for (std::size_t r = 0; r < run_len.size(); ++r)
            if (cusps_in_run[r] != 1)
                throw AlignmentError("cancellation run on curve " + std::to_string(ci + 1) + " holds " +
                                     std::to_string(cusps_in_run[r]) + " cusps under '" + m.name + "'");

        const auto cusps = c.cusp_junctions();
        bool word_matched = false, done = false;
        for (std::size_t tj = 0; tj < out.curves.size() && !done; ++tj) {
            const BoundaryCurve& d = out.curves[tj];
            if (d.cusp_count() != c.cusp_count())
                continue;
            for (std::size_t r : rotations_onto(R, d.word)) {
                word_matched = true;
                const auto tcusps = d.cusp_junctions();
                std::vector<std::size_t> imgs, order;
                bool ok = true;
                for (std::size_t q : cusps) {
                    const std::size_t tj_pos = (image_junction[q] + r) % mlen;
                    auto it = std::find(tcusps.begin(), tcusps.end(), tj_pos);
                    if (it == tcusps.end()) {
                        ok = false;
                        break;
                    }
                    imgs.push_back(tj_pos);
                    order.push_back(static_cast<std::size_t>(it - tcusps.begin()));
                }
                for (std::size_t s = 1; ok && s < order.size(); ++s)
                    ok = order[s] == (order[0] + s) % order.size();
                if (!ok)
                    continue;
                act.target = tj;
                act.rotation = r;
                act.cusp_shift = order.empty() ? 0 : order[0];
                act.cusp_images = imgs;
                act.image = R;
                done = true;
                break;
            }
        }
        if (!done) {
            if (word_matched)
                throw AlignmentError("image cusps of curve " + std::to_string(ci + 1) + " under '" + m.name +
                                     "' do not land on cusps in order");
            throw BoundaryNotPreserved("image of boundary curve " + word_text(c.word, a) + " under '" + m.name +
                                       "' reduces to " + word_text(R, a) + ", which is no boundary curve");
        }
        if (hit[act.target])
            throw BoundaryNotPreserved("two boundary curves map onto curve " + std::to_string(act.target + 1));
        hit[act.target] = true;
        out.permutation.push_back(act.target);
        out.actions.push_back(std::move(act));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Side dynamics

bool SideDynamics::single_periodic_point() const {
    if (sides_report.empty())
        return false;
    return std::all_of(sides_report.begin(), sides_report.end(), [](const SideOrbit& s) {
        return s.periodic_points == 1 && s.junction_points == 0 && !s.degenerate;
    });
}

namespace {

struct Piece {
    bool survives = false;
    std::size_t side = 0;    // global side index of the target letter
    std::size_t letter = 0;  // position inside that side
    std::size_t position = 0;  // unreduced position (for display)
};

} // namespace

SideDynamics side_dynamics(const TrackMorphism& m) {
    SideDynamics sd;
    sd.action = boundary_action(m);
    const auto& curves = sd.action.curves;
    const auto& a = m.source.alphabet();

    // Global side numbering and letter -> (side, index) lookup per curve.
    std::vector<std::size_t> first_side(curves.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> where(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) {
        first_side[c] = sd.sides.size();
        const auto& curve = curves[c];
        const std::size_t n = curve.word.size();
        where[c].assign(n, {0, 0});
        const auto cusps = curve.cusp_junctions();
        if (cusps.empty()) {
            sd.warnings.push_back("curve " + std::to_string(c + 1) + " has no cusps");
            continue;
        }
        for (std::size_t s = 0; s < cusps.size(); ++s) {
            EdgeWord side;
            for (std::size_t k = (cusps[s] + 1) % n;; k = (k + 1) % n) {
                where[c][k] = {sd.sides.size(), side.size()};
                side.push_back(curve.word[k]);
                if (k == cusps[(s + 1) % cusps.size()])
                    break;
            }
            sd.sides.push_back(std::move(side));
            sd.side_curve.push_back(c);
        }
    }
    const std::size_t nsides = sd.sides.size();

    // Side permutation from cusp images, and the piecewise map on letters.
    sd.permutation.assign(nsides, 0);
    std::vector<std::vector<std::vector<Piece>>> pieces(nsides);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> side_range(nsides);  // unreduced span per side
    std::vector<CurveImage> images;
    for (std::size_t c = 0; c < curves.size(); ++c)
        images.push_back(image_of(curves[c], m));
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        const auto& act = sd.action.actions[c];
        const auto& target = curves[act.target];
        const auto cusps = curve.cusp_junctions();
        const auto tcusps = target.cusp_junctions();
        const CurveImage& img = images[c];
        const std::size_t mlen = img.survivors.size();
        for (std::size_t s = 0; s < cusps.size(); ++s) {
            const auto it = std::find(tcusps.begin(), tcusps.end(), act.cusp_images[s]);
            sd.permutation[first_side[c] + s] = first_side[act.target] + static_cast<std::size_t>(it - tcusps.begin());
        }
        for (std::size_t k = 0; k < curve.word.size(); ++k) {
            if (cusps.empty())
                break;
            const auto [gs, li] = where[c][k];
            auto& lp = pieces[gs];
            if (lp.size() <= li)
                lp.resize(li + 1);
            for (std::size_t t = 0; t < img.length[k]; ++t) {
                const std::size_t p = img.start[k] + t;
                Piece pc;
                pc.position = p;
                if (img.survivor_index[p] >= 0) {
                    const std::size_t tpos = (static_cast<std::size_t>(img.survivor_index[p]) + act.rotation) % mlen;
                    pc.survives = true;
                    pc.side = where[act.target][tpos].first;
                    pc.letter = where[act.target][tpos].second;
                    if (pc.side != sd.permutation[gs])
                        throw AlignmentError("letter " + a.name(curve.word[k].edge) + " of side " +
                                             std::to_string(gs + 1) + " lands outside the image side");
                }
                lp[li].push_back(pc);
            }
        }
    }

    // Orbits of the side permutation.
    std::vector<std::size_t> period(nsides, 0);
    for (std::size_t s = 0; s < nsides; ++s) {
        std::size_t p = 1, x = sd.permutation[s];
        while (x != s) {
            x = sd.permutation[x];
            ++p;
        }
        period[s] = p;
    }

    for (std::size_t s = 0; s < nsides; ++s) {
        SideOrbit orb;
        orb.side = s;
        orb.curve = sd.side_curve[s];
        orb.period = period[s];
        const std::size_t p = period[s];
        std::vector<std::size_t> side_at(p + 1);
        side_at[0] = s;
        for (std::size_t d = 1; d <= p; ++d)
            side_at[d] = sd.permutation[side_at[d - 1]];

        for (std::size_t j = 0; j < sd.sides[s].size(); ++j) {
            // reach[d] = letters of side_at[d] that return to (s, j) after p - d steps.
            std::vector<std::vector<bool>> reach(p + 1);
            reach[p].assign(sd.sides[s].size(), false);
            reach[p][j] = true;
            for (std::size_t d = p; d-- > 0;) {
                const std::size_t cs = side_at[d];
                reach[d].assign(sd.sides[cs].size(), false);
                for (std::size_t l = 0; l < sd.sides[cs].size(); ++l)
                    for (const auto& pc : pieces[cs][l])
                        if (pc.survives && reach[d + 1][pc.letter])
                            reach[d][l] = true;
            }
            if (!reach[0][j])
                continue;
            std::vector<std::size_t> path_letters{j};
            std::vector<std::size_t> path_positions;
            std::function<void(std::size_t, std::size_t, const Rational&, const Rational&)> dfs =
                [&](std::size_t d, std::size_t l, const Rational& lo, const Rational& hi) {
                    if (d == p) {
                        const Rational width = hi - lo;
                        if (width == 1) {
                            orb.degenerate = true;
                            return;
                        }
                        const Rational x = lo / (1 - width);
                        if (x > 0 && x < 1) {
                            ++orb.periodic_points;
                            PeriodicPoint pt;
                            pt.letter = j;
                            pt.position = x;
                            for (std::size_t k = 0; k < path_letters.size(); ++k)
                                pt.itinerary.push_back(format_word({sd.sides[side_at[k]][path_letters[k]]}, a));
                            if (orb.points.empty()) {
                                // Successive images of the side, target side in brackets.
                                orb.display.push_back("");
                                for (std::size_t q = 0; q < sd.sides[s].size(); ++q) {
                                    std::string t = format_word({sd.sides[s][q]}, a);
                                    if (q == j)
                                        t += "*";
                                    orb.display.back() += (q ? " " : "[") + t;
                                }
                                orb.display.back() += "]";
                                for (std::size_t k = 0; k < p; ++k) {
                                    const std::size_t cs = side_at[k];
                                    const CurveImage& img = images[sd.side_curve[cs]];
                                    std::vector<const Piece*> row;
                                    for (const auto& lp : pieces[cs])
                                        for (const auto& pc : lp)
                                            row.push_back(&pc);
                                    std::size_t first = row.size(), last = 0;
                                    for (std::size_t q = 0; q < row.size(); ++q)
                                        if (row[q]->survives) {
                                            first = std::min(first, q);
                                            last = q;
                                        }
                                    std::string line;
                                    for (std::size_t q = 0; q < row.size(); ++q) {
                                        if (q)
                                            line += " ";
                                        if (q == first)
                                            line += "[";
                                        line += format_word({img.letters[row[q]->position]}, a);
                                        if (row[q]->position == path_positions[k])
                                            line += "*";
                                        if (q == last && first < row.size())
                                            line += "]";
                                    }
                                    orb.display.push_back(line);
                                }
                            }
                            orb.points.push_back(std::move(pt));
                        } else {
                            ++orb.junction_points;
                        }
                        return;
                    }
                    const std::size_t cs = side_at[d];
                    const auto& lp = pieces[cs][l];
                    const Rational span = hi - lo;
                    const Rational len(static_cast<long long>(lp.size()));
                    for (std::size_t t = 0; t < lp.size(); ++t) {
                        const auto& pc = lp[t];
                        if (!pc.survives || !reach[d + 1][pc.letter])
                            continue;
                        const Rational nlo = lo + span * Rational(static_cast<long long>(t)) / len;
                        const Rational nhi = lo + span * Rational(static_cast<long long>(t + 1)) / len;
                        path_letters.push_back(pc.letter);
                        path_positions.push_back(pc.position);
                        dfs(d + 1, pc.letter, nlo, nhi);
                        path_letters.pop_back();
                        path_positions.pop_back();
                    }
                };
            dfs(0, j, Rational(0), Rational(1));
        }
        if (orb.degenerate)
            sd.warnings.push_back("side " + std::to_string(s + 1) + " is mapped onto itself without expansion");
        if (orb.junction_points)
            sd.warnings.push_back("side " + std::to_string(s + 1) + " has a periodic point on a letter end");
        sd.sides_report.push_back(std::move(orb));
    }
    return sd;
}

std::vector<SeparatrixOrbit> separatrix_orbits(const SideDynamics& sd) {
    std::vector<SeparatrixOrbit> out;
    std::vector<bool> seen(sd.permutation.size(), false);
    for (std::size_t s = 0; s < sd.permutation.size(); ++s) {
        if (seen[s])
            continue;
        SeparatrixOrbit o;
        o.curve = sd.side_curve[s];
        for (std::size_t x = s; !seen[x]; x = sd.permutation[x]) {
            seen[x] = true;
            o.sides.push_back(x);
        }
        o.length = o.sides.size();
        out.push_back(std::move(o));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificate

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::PseudoAnosov:
        return "pA";
    case Verdict::Reducible:
        return "reducible";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

Certificate certify(const TrackMorphism& m, long double tol) {
    Certificate c;
    c.map_name = m.name;
    c.alphabet = m.source.alphabet();
    const auto report = check_morphism(m);
    for (const auto& p : report.problems)
        c.diagnostics.push_back("map check: " + p);
    const IncidenceMatrix M = incidence_matrix(m);
    c.fixed_edges = fixed_edge_points(m);
    const auto irr = irreducibility(M);
    c.irreducible = irr.irreducible;
    c.invariant_subgraph = irr.witness;
    const bool periodic_matrix = M.is_permutation();
    if (periodic_matrix)
        c.diagnostics.push_back("incidence matrix is a permutation matrix (periodic)");
    if (c.irreducible) {
        c.primitive = primitivity(M);
        if (c.primitive) {
            try {
                c.dilatation = dilatation(M, tol);
            } catch (const Error& e) {
                c.diagnostics.push_back(std::string("dilatation: ") + e.what());
            }
        }
    }
    c.orientable = orientation(m.source).orientable();
    c.singularity_type = singularity_type(m.source);
    try {
        c.sides = side_dynamics(m);
        c.separatrix_orbits = separatrix_orbits(*c.sides);
        c.single_boundary_periodic_point = c.sides->single_periodic_point();
        for (const auto& w : c.sides->warnings)
            c.diagnostics.push_back("sides: " + w);
    } catch (const Error& e) {
        c.diagnostics.push_back(std::string("boundary: ") + e.what());
    }

    if (periodic_matrix)
        c.verdict = Verdict::Inconclusive;
    else if (!c.irreducible)
        c.verdict = Verdict::Reducible;
    else if (c.primitive && c.single_boundary_periodic_point && report.valid())
        c.verdict = Verdict::PseudoAnosov;
    else
        c.verdict = Verdict::Inconclusive;

    // Fixed points: edges, fixed separatrices, invariant curves without cusps.
    bool fixed_side = false, cuspless_fixed = false;
    std::size_t fixed_curves = 0;
    std::vector<std::size_t> prongs;
    bool positive_index = true;
    if (c.sides) {
        const auto& act = c.sides->action;
        for (const auto& o : c.separatrix_orbits)
            if (o.length == 1)
                fixed_side = true;
        for (std::size_t k = 0; k < act.permutation.size(); ++k)
            if (act.permutation[k] == k) {
                ++fixed_curves;
                prongs.push_back(act.curves[k].cusp_count());
                if (act.curves[k].cusp_count() == 0)
                    cuspless_fixed = true;
                for (const auto& o : c.separatrix_orbits)
                    if (o.curve == k && o.length == 1)
                        positive_index = false;
            }
    }
    c.fixed_point_free = c.sides.has_value() && c.fixed_edges.empty() && !fixed_side && !cuspless_fixed;
    if (!c.sides)
        c.punctured_reading = "undetermined: boundary dynamics unavailable";
    else if (c.fixed_point_free)
        c.punctured_reading = "no fixed points on the punctured surface";
    else
        c.punctured_reading = "fixed points present";
    if (c.sides) {
        std::ostringstream os;
        os << fixed_curves << " fixed singularit" << (fixed_curves == 1 ? "y" : "ies");
        if (!prongs.empty()) {
            os << " (";
            for (std::size_t k = 0; k < prongs.size(); ++k)
                os << (k ? ", " : "") << prongs[k] << "-prong";
            os << ")";
            os << (positive_index ? " of positive index" : ", some with a fixed separatrix");
        }
        os << (c.fixed_edges.empty() ? " and no other fixed points" : " plus fixed points on edges");
        c.closed_reading = os.str();
    } else {
        c.closed_reading = "undetermined: boundary dynamics unavailable";
    }
    return c;
}

namespace {

std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string ld_text(long double v, int prec = 15) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

} // namespace

std::string certificate_text(const Certificate& c) {
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "certificate for " << c.map_name << "\n";
    os << "  verdict: " << verdict_name(c.verdict) << "\n";
    os << "  fixed edges: ";
    if (c.fixed_edges.empty())
        os << "none";
    for (std::size_t k = 0; k < c.fixed_edges.size(); ++k)
        os << (k ? " " : "") << c.fixed_edges[k];
    os << "\n";
    os << "  irreducible: " << yn(c.irreducible) << "\n";
    if (!c.irreducible && !c.invariant_subgraph.empty()) {
        os << "  invariant subgraph: {";
        for (std::size_t k = 0; k < c.invariant_subgraph.size(); ++k)
            os << (k ? "," : "") << c.invariant_subgraph[k];
        os << "}\n";
    }
    os << "  primitive: " << yn(c.primitive) << "\n";
    os << "  orientable: " << yn(c.orientable) << "\n";
    os << "  singularity type: {";
    for (std::size_t k = 0; k < c.singularity_type.size(); ++k)
        os << (k ? "," : "") << c.singularity_type[k];
    os << "}\n";
    os << "  single boundary periodic point: " << yn(c.single_boundary_periodic_point) << "\n";
    if (c.sides) {
        const auto& act = c.sides->action;
        for (const auto& a : act.actions)
            os << "  curve " << a.source + 1 << " -> curve " << a.target + 1 << ", rotation " << a.rotation
               << ", cusp shift " << a.cusp_shift << "\n";
        for (const auto& o : c.separatrix_orbits) {
            os << "  side orbit on curve " << o.curve + 1 << ", length " << o.length << ":";
            for (auto s : o.sides)
                os << " [" << format_word(c.sides->sides[s], c.alphabet) << "]";
            os << "\n";
        }
    }
    if (c.dilatation)
        os << "  dilatation: " << ld_text(c.dilatation->lambda) << " in [" << ld_text(c.dilatation->lower, 18) << ", "
           << ld_text(c.dilatation->upper, 18) << "]\n";
    os << "  fixed point free: " << yn(c.fixed_point_free) << "\n";
    os << "  punctured surface: " << c.punctured_reading << "\n";
    os << "  closed surface: " << c.closed_reading << "\n";
    for (const auto& d : c.diagnostics)
        os << "  note: " << d << "\n";
    return os.str();
}

std::string certificate_json(const Certificate& c) {
    using nlohmann::json;
    json j;
    j["schema_version"] = Certificate::schema_version;
    j["map"] = c.map_name;
    j["verdict"] = verdict_name(c.verdict);
    j["fixed_edges"] = c.fixed_edges;
    j["fixed_point_free"] = c.fixed_point_free;
    j["irreducible"] = c.irreducible;
    j["invariant_subgraph"] = c.invariant_subgraph;
    j["primitive"] = c.primitive;
    j["orientable"] = c.orientable;
    j["singularity_type"] = c.singularity_type;
    j["single_boundary_periodic_point"] = c.single_boundary_periodic_point;
    j["punctured_reading"] = c.punctured_reading;
    j["closed_reading"] = c.closed_reading;
    j["diagnostics"] = c.diagnostics;
    json orbits = json::array();
    for (const auto& o : c.separatrix_orbits)
        orbits.push_back({{"curve", o.curve + 1}, {"length", o.length}, {"sides", o.sides}});
    j["separatrix_orbits"] = orbits;
    if (c.dilatation) {
        const auto& d = *c.dilatation;
        j["dilatation"] = {{"lambda", static_cast<double>(d.lambda)},
                           {"lower", ld_text(d.lower, 21)},
                           {"upper", ld_text(d.upper, 21)},
                           {"iterations", d.iterations}};
        std::vector<double> w(d.widths.begin(), d.widths.end());
        j["dilatation"]["widths"] = w;
    } else {
        j["dilatation"] = nullptr;
    }
    if (c.sides) {
        json sides = json::array();
        for (const auto& s : c.sides->sides_report) {
            json pts = json::array();
            for (const auto& p : s.points)
                pts.push_back({{"letter", p.letter}, {"position", rational_text(p.position)}, {"itinerary", p.itinerary}});
            sides.push_back({{"side", s.side},
                             {"curve", s.curve + 1},
                             {"period", s.period},
                             {"periodic_points", s.periodic_points},
                             {"junction_points", s.junction_points},
                             {"degenerate", s.degenerate},
                             {"points", pts},
                             {"images", s.display}});
        }
        j["sides"] = sides;
        json curves = json::array();
        for (const auto& a : c.sides->action.actions)
            curves.push_back({{"source", a.source + 1},
                              {"target", a.target + 1},
                              {"rotation", a.rotation},
                              {"cusp_shift", a.cusp_shift},
                              {"cancellation", a.cancellation}});
        j["boundary"] = curves;
    }
    return j.dump(2) + "\n";
}

} // namespace ttlab
