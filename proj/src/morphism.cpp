#include "ttlab/morphism.hpp"

#include <algorithm>
#include <tuple>

#include "ttlab/errors.hpp"
#include "ttlab/io.hpp"

namespace ttlab {

namespace {

int departure_dart(SignedEdge l) { return 2 * l.edge + (l.reversed ? 1 : 0); }
int arrival_dart(SignedEdge l) { return 2 * l.edge + (l.reversed ? 0 : 1); }

bool letters_in_range(const EdgeWord& w, std::size_t n) {
    return std::all_of(w.begin(), w.end(),
                       [n](const SignedEdge& l) { return l.edge >= 0 && static_cast<std::size_t>(l.edge) < n; });
}

} // namespace

bool TrackMorphism::is_self_map() const { return same_labelled_track(source, target); }

const EdgeWord& TrackMorphism::image(std::string_view label) const {
    return images.at(static_cast<std::size_t>(source.alphabet().index(label)));
}

TrackMorphism identity_morphism(const TrainTrack& track) {
    TrackMorphism m;
    m.name = "id";
    m.source = track;
    m.target = track;
    for (std::size_t e = 0; e < track.edge_count(); ++e)
        m.images.push_back({{static_cast<int>(e), false}});
    for (std::size_t s = 0; s < track.switch_count(); ++s)
        m.vertex_images.push_back(static_cast<int>(s));
    return m;
}

TrackMorphism morphism_from_text(std::string name, const TrainTrack& source, const TrainTrack& target,
                                 const std::map<std::string, std::string>& images) {
    TrackMorphism m;
    m.name = std::move(name);
    m.source = source;
    m.target = target;
    for (std::size_t e = 0; e < source.edge_count(); ++e) {
        const auto& label = source.alphabet().name(static_cast<int>(e));
        auto it = images.find(label);
        if (it == images.end()) {
            auto t = target.alphabet().find(label);
            if (!t)
                throw InvalidTrack("no image given for edge '" + label + "'");
            m.images.push_back({{*t, false}});
        } else {
            m.images.push_back(parse_word(it->second, target.alphabet()));
        }
    }
    for (const auto& [label, _] : images)
        if (!source.alphabet().find(label))
            throw InvalidTrack("image given for unknown edge '" + label + "'");
    return m;
}

std::optional<std::vector<int>> infer_vertex_images(const TrackMorphism& m) {
    if (!validate(m.source.without_declared_boundaries()).valid() ||
        !validate(m.target.without_declared_boundaries()).valid())
        return std::nullopt;
    if (m.images.size() != m.source.edge_count())
        return std::nullopt;
    const Ribbon src(m.source), tgt(m.target);
    std::vector<int> out(m.source.switch_count(), -1);
    for (std::size_t e = 0; e < m.images.size(); ++e) {
        const auto& w = m.images[e];
        if (w.empty() || !letters_in_range(w, m.target.edge_count()))
            return std::nullopt;
        const int s0 = src.place(static_cast<int>(2 * e)).sw;
        const int s1 = src.place(static_cast<int>(2 * e + 1)).sw;
        const int t0 = tgt.place(departure_dart(w.front())).sw;
        const int t1 = tgt.place(arrival_dart(w.back())).sw;
        for (auto [s, t] : {std::pair{s0, t0}, std::pair{s1, t1}}) {
            auto& slot = out[static_cast<std::size_t>(s)];
            if (slot >= 0 && slot != t)
                return std::nullopt;
            slot = t;
        }
    }
    return out;
}

ValidationReport check_morphism(const TrackMorphism& m) {
    ValidationReport report;
    auto& problems = report.problems;
    for (const auto* t : {&m.source, &m.target}) {
        auto r = validate(t->without_declared_boundaries());
        for (const auto& p : r.problems)
            problems.push_back("track '" + t->name() + "': " + p);
    }
    if (!problems.empty())
        return report;
    if (m.images.size() != m.source.edge_count()) {
        problems.push_back("image count " + std::to_string(m.images.size()) + " differs from edge count " +
                           std::to_string(m.source.edge_count()));
        return report;
    }
    const Ribbon src(m.source), tgt(m.target);
    const auto& sa = m.source.alphabet();
    const auto& ta = m.target.alphabet();
    bool words_ok = true;
    for (std::size_t e = 0; e < m.images.size(); ++e) {
        const auto& w = m.images[e];
        const std::string& label = sa.name(static_cast<int>(e));
        if (w.empty()) {
            problems.push_back("empty image at " + label);
            words_ok = false;
            continue;
        }
        if (!letters_in_range(w, m.target.edge_count())) {
            problems.push_back("unknown letter in image of " + label);
            words_ok = false;
            continue;
        }
        if (!is_reduced(w))
            problems.push_back("image of " + label + " is not reduced");
        for (std::size_t k = 1; k < w.size(); ++k) {
            const int a = arrival_dart(w[k - 1]);
            const int d = departure_dart(w[k]);
            if (tgt.place(a).sw != tgt.place(d).sw) {
                problems.push_back("endpoint mismatch at " + label + ", position " + std::to_string(k));
            } else if (tgt.same_side(a, d)) {
                problems.push_back("non-smooth passage at " + label + ", position " + std::to_string(k) + " (" +
                                   format_end(ta, end_of(a)) + " then " + format_end(ta, end_of(d)) +
                                   " on one side)");
            }
        }
    }
    if (!words_ok)
        return report;

    // Vertex images and the side condition at every source switch.
    std::vector<int> vimg(m.source.switch_count(), -1);
    for (int d = 0; d < src.dart_count(); ++d) {
        const auto& w = m.images[static_cast<std::size_t>(d / 2)];
        const int germ = (d & 1) ? arrival_dart(w.back()) : departure_dart(w.front());
        const int s = src.place(d).sw;
        const int t = tgt.place(germ).sw;
        auto& slot = vimg[static_cast<std::size_t>(s)];
        if (slot < 0)
            slot = t;
        else if (slot != t)
            problems.push_back("endpoint mismatch at " + sa.name(d / 2) + ": " + format_end(sa, end_of(d)) +
                               " lands on switch " + m.target.switches()[static_cast<std::size_t>(t)].id +
                               ", expected " + m.target.switches()[static_cast<std::size_t>(slot)].id);
    }
    if (!m.vertex_images.empty()) {
        if (m.vertex_images.size() != vimg.size())
            problems.push_back("vertex image count differs from switch count");
        else
            for (std::size_t s = 0; s < vimg.size(); ++s)
                if (m.vertex_images[s] != vimg[s])
                    problems.push_back("vertex image of switch " + m.source.switches()[s].id +
                                       " disagrees with the edge images");
    }
    for (std::size_t s = 0; s < m.source.switch_count(); ++s) {
        const auto& sw = m.source.switches()[s];
        // Germs leaving the image switch, one per source end.
        auto germ_of = [&](EdgeEnd end) {
            const auto& w = m.images[static_cast<std::size_t>(end.edge)];
            return end.end == End::Initial ? departure_dart(w.front()) : arrival_dart(w.back());
        };
        std::vector<int> ga, gb;
        for (const auto& e : sw.sideA)
            ga.push_back(germ_of(e));
        for (const auto& e : sw.sideB)
            gb.push_back(germ_of(e));
        bool ok = true;
        for (std::size_t k = 1; k < ga.size(); ++k)
            ok = ok && tgt.same_side(ga[0], ga[k]);
        for (std::size_t k = 1; k < gb.size(); ++k)
            ok = ok && tgt.same_side(gb[0], gb[k]);
        if (!ga.empty() && !gb.empty() && tgt.place(ga[0]).sw == tgt.place(gb[0]).sw)
            ok = ok && !tgt.same_side(ga[0], gb[0]);
        if (!ok)
            problems.push_back("side structure not preserved at switch " + sw.id);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Split notation

std::string format_move(const SplitMove& move) {
    return std::string(1, end_tag(move.slid_end)) + "(" + move.slid + ")/" + end_tag(move.over_end) + "(" +
           move.over + ")";
}

std::string format_sequence(const SplitSequence& seq, std::string_view sep) {
    std::string out;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k)
            out += sep;
        out += format_move(seq[k]);
    }
    return out;
}

SplitSequence parse_split_notation(std::string_view text) {
    SplitSequence out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';'; };
    auto parse_end = [&](End& end, std::string& label) {
        if (i >= text.size())
            throw ParseError("unexpected end of input, expected end tag", line, col);
        if (text[i] == 't')
            end = End::Terminal;
        else if (text[i] == 'i')
            end = End::Initial;
        else
            throw ParseError(std::string("invalid end tag '") + text[i] + "'", line, col);
        advance(1);
        if (i >= text.size() || text[i] != '(')
            throw ParseError("expected '('", line, col);
        advance(1);
        const std::size_t start = i;
        while (i < text.size() && text[i] != ')' && !is_sep(text[i]) && text[i] != '/')
            advance(1);
        if (i == start)
            throw ParseError("empty edge label", line, col);
        label = std::string(text.substr(start, i - start));
        if (i >= text.size() || text[i] != ')')
            throw ParseError("expected ')'", line, col);
        advance(1);
    };
    while (i < text.size()) {
        if (is_sep(text[i])) {
            advance(1);
            continue;
        }
        if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        SplitMove mv;
        parse_end(mv.slid_end, mv.slid);
        if (i >= text.size() || text[i] != '/')
            throw ParseError("expected '/'", line, col);
        advance(1);
        parse_end(mv.over_end, mv.over);
        if (i < text.size() && !is_sep(text[i]))
            throw ParseError(std::string("unexpected character '") + text[i] + "'", line, col);
        out.push_back(std::move(mv));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

struct ResolvedMove {
    EdgeEnd slid;
    EdgeEnd over;
};

SplitMove named_move(const Alphabet& a, int slid_dart, int over_dart) {
    const EdgeEnd s = end_of(slid_dart), o = end_of(over_dart);
    return {a.name(s.edge), s.end, a.name(o.edge), o.end};
}

bool has_big_switch(const TrainTrack& track) {
    return std::any_of(track.switches().begin(), track.switches().end(),
                       [](const Switch& sw) { return sw.valency() > 3; });
}

} // namespace

std::vector<SplitMove> legal_splits(const TrainTrack& track) {
    require_valid(track);
    if (!has_big_switch(track))
        throw NoSplitAvailable("no switch of valency above 3 in '" + track.name() + "'");
    std::vector<std::pair<int, int>> moves;
    for (const auto& sw : track.switches()) {
        if (sw.valency() <= 3)
            continue;
        // The two smooth corners: last of A with last of B, first of B with first of A.
        const std::pair<EdgeEnd, EdgeEnd> corners[2] = {{sw.sideA.back(), sw.sideB.back()},
                                                        {sw.sideA.front(), sw.sideB.front()}};
        for (const auto& [ea, eb] : corners) {
            if (ea.edge == eb.edge)
                continue;
            if (sw.sideA.size() >= 2)
                moves.emplace_back(dart_of(ea), dart_of(eb));
            if (sw.sideB.size() >= 2)
                moves.emplace_back(dart_of(eb), dart_of(ea));
        }
    }
    std::sort(moves.begin(), moves.end());
    moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    std::vector<SplitMove> out;
    for (auto [s, o] : moves)
        out.push_back(named_move(track.alphabet(), s, o));
    return out;
}

SplitResult apply_split(const TrainTrack& track, const SplitMove& move) {
    require_valid(track);
    const auto& a = track.alphabet();
    const auto xs = a.find(move.slid), ys = a.find(move.over);
    if (!xs || !ys)
        throw IllegalMove("unknown edge in move " + format_move(move), "unknown-edge");
    if (!has_big_switch(track))
        throw IllegalMove("no switch of valency above 3, move " + format_move(move), "a");
    const EdgeEnd s{*xs, move.slid_end}, o{*ys, move.over_end};
    const Ribbon rib(track);
    const int ds = dart_of(s), dov = dart_of(o);
    const auto ps = rib.place(ds), po = rib.place(dov);
    if (ps.sw != po.sw)
        throw IllegalMove("ends of " + format_move(move) + " are at different switches", "c");
    const auto& sw0 = track.switches()[static_cast<std::size_t>(ps.sw)];
    if (sw0.valency() <= 3)
        throw IllegalMove("switch " + sw0.id + " has valency " + std::to_string(sw0.valency()) + ", move " +
                              format_move(move),
                          "b");
    if (ps.side == po.side)
        throw IllegalMove("ends of " + format_move(move) + " lie on one side of switch " + sw0.id, "c");
    const bool after = rib.next(ds) == dov;
    const bool before = rib.next(dov) == ds;
    if (!after && !before)
        throw IllegalMove("ends of " + format_move(move) + " are not extreme at a common corner of switch " + sw0.id,
                          "c");
    const std::size_t slid_side_size = ps.side == 0 ? sw0.sideA.size() : sw0.sideB.size();
    if (slid_side_size < 2 || s.edge == o.edge)
        throw IllegalMove("move " + format_move(move) + " joins two cusps", "d");

    std::vector<Switch> sws = track.switches();
    auto& from = sws[static_cast<std::size_t>(ps.sw)];
    auto& side = ps.side == 0 ? from.sideA : from.sideB;
    side.erase(side.begin() + ps.position);

    const EdgeEnd oo{o.edge, o.end == End::Initial ? End::Terminal : End::Initial};
    auto insert_next_to_partner = [&] {
        for (auto& sw : sws)
            for (int which = 0; which < 2; ++which) {
                auto& lst = which == 0 ? sw.sideA : sw.sideB;
                auto it = std::find(lst.begin(), lst.end(), oo);
                if (it == lst.end())
                    continue;
                const auto k = it - lst.begin();
                // "after" puts the slid end right after o' in ribbon order.
                const bool right = (which == 0) == after;
                lst.insert(lst.begin() + (right ? k + 1 : k), s);
                return;
            }
    };
    insert_next_to_partner();
    TrainTrack next(track.name(), a, std::move(sws));

    TrackMorphism m = identity_morphism(next);
    m.name = format_move(move);
    m.target = track;
    const SignedEdge X{s.edge, false};
    if (s.end == End::Terminal)
        m.images[static_cast<std::size_t>(s.edge)] = {X, {o.edge, o.end == End::Terminal}};
    else
        m.images[static_cast<std::size_t>(s.edge)] = {{o.edge, o.end == End::Initial}, X};
    return {std::move(next), std::move(m)};
}

SplitResult apply_sequence(const TrainTrack& track, const SplitSequence& seq) {
    TrainTrack cur = track;
    TrackMorphism comp = identity_morphism(track);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        SplitResult step;
        try {
            step = apply_split(cur, seq[k]);
        } catch (const IllegalMove& err) {
            throw IllegalMove("move " + std::to_string(k) + " (" + format_move(seq[k]) + "): " + err.what(),
                              err.condition(), k, format_track(cur));
        }
        // comp: cur -> track; step: next -> cur. Only the slid edge changes.
        const int x = cur.alphabet().index(seq[k].slid);
        std::vector<EdgeWord> images = comp.images;
        images[static_cast<std::size_t>(x)] = reduced(substitute(step.morphism.images[static_cast<std::size_t>(x)], comp.images));
        comp.images = std::move(images);
        comp.source = step.track;
        cur = std::move(step.track);
    }
    comp.name = seq.empty() ? "id" : format_sequence(seq);
    comp.source = cur;
    comp.target = track;
    comp.vertex_images.clear();
    for (std::size_t s = 0; s < cur.switch_count(); ++s)
        comp.vertex_images.push_back(static_cast<int>(*track.find_switch(cur.switches()[s].id)));
    return {std::move(cur), std::move(comp)};
}

TrackMorphism compose(const TrackMorphism& outer, const TrackMorphism& inner) {
    if (!(inner.target.alphabet() == outer.source.alphabet()) ||
        !same_labelled_track(inner.target, outer.source))
        throw ChainMismatch("cannot compose '" + outer.name + "' after '" + inner.name + "': target '" +
                            inner.target.name() + "' differs from source '" + outer.source.name() + "'");
    TrackMorphism m;
    m.name = outer.name + " o " + inner.name;
    m.source = inner.source;
    m.target = outer.target;
    for (const auto& w : inner.images)
        m.images.push_back(reduced(substitute(w, outer.images)));
    if (!inner.vertex_images.empty() && !outer.vertex_images.empty())
        for (int v : inner.vertex_images)
            m.vertex_images.push_back(outer.vertex_images.at(static_cast<std::size_t>(v)));
    return m;
}

SplitResult relabel(const TrainTrack& track, const std::vector<int>& perm) {
    const std::size_t n = track.edge_count();
    std::vector<bool> hit(n, false);
    if (perm.size() != n)
        throw NotABijection("permutation has " + std::to_string(perm.size()) + " entries for " + std::to_string(n) +
                            " edges");
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || hit[static_cast<std::size_t>(p)])
            throw NotABijection("relabeling is not a bijection of the alphabet");
        hit[static_cast<std::size_t>(p)] = true;
    }
    std::vector<Switch> sws = track.switches();
    for (auto& sw : sws) {
        for (auto& e : sw.sideA)
            e.edge = perm[static_cast<std::size_t>(e.edge)];
        for (auto& e : sw.sideB)
            e.edge = perm[static_cast<std::size_t>(e.edge)];
    }
    std::vector<DeclaredBoundary> decl = track.declared_boundaries();
    for (auto& d : decl)
        for (auto& l : d.word)
            l.edge = perm[static_cast<std::size_t>(l.edge)];
    TrainTrack out(track.name(), track.alphabet(), std::move(sws), std::move(decl));
    TrackMorphism m;
    m.name = "relabel";
    m.source = track;
    m.target = out;
    for (std::size_t e = 0; e < n; ++e)
        m.images.push_back({{perm[e], false}});
    for (std::size_t s = 0; s < track.switch_count(); ++s)
        m.vertex_images.push_back(static_cast<int>(s));
    return {std::move(out), std::move(m)};
}

SplitResult relabel(const TrainTrack& track, const std::map<std::string, std::string>& perm) {
    const auto& a = track.alphabet();
    std::vector<int> p(a.size());
    for (std::size_t e = 0; e < a.size(); ++e)
        p[e] = static_cast<int>(e);
    for (const auto& [from, to] : perm) {
        const auto f = a.find(from), t = a.find(to);
        if (!f || !t)
            throw NotABijection("relabeling mentions unknown label '" + (f ? to : from) + "'");
        p[static_cast<std::size_t>(*f)] = *t;
    }
    return relabel(track, p);
}

TrackMorphism isomorphism_morphism(const TrainTrack& from, const TrainTrack& to, const TrackIsomorphism& iso) {
    TrackMorphism m;
    m.name = "iso";
    m.source = from;
    m.target = to;
    for (const auto& l : iso.edge_map)
        m.images.push_back({l});
    m.vertex_images = iso.switch_map;
    return m;
}

bool same_images(const TrackMorphism& a, const TrackMorphism& b) {
    return a.source.alphabet() == b.source.alphabet() && a.target.alphabet() == b.target.alphabet() &&
           a.images == b.images;
}

} // namespace ttlab
