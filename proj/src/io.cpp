#include "ttlab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ttlab/errors.hpp"

namespace ttlab {

const TrainTrack* Document::find_track(std::string_view name) const {
    for (const auto& t : tracks)
        if (t.name() == name)
            return &t;
    return nullptr;
}

std::string format_end(const Alphabet& alphabet, EdgeEnd end) {
    return std::string(1, end_tag(end.end)) + "(" + alphabet.name(end.edge) + ")";
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;)
        out.push_back(tok);
    return out;
}

struct PendingTrack {
    std::string name;
    std::vector<std::string> edges;
    std::size_t line = 0;
    struct Sw {
        std::string id;
        std::vector<std::pair<std::string, std::size_t>> sideA, sideB;  // text + line
        std::size_t line = 0;
    };
    std::vector<Sw> switches;
    std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> boundaries;
};

struct PendingMap {
    std::string name, source, target;
    std::size_t line = 0;
    std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> images;
};

EdgeEnd parse_end_token(const std::string& tok, const Alphabet& a, std::size_t line) {
    if (tok.size() < 4 || (tok[0] != 't' && tok[0] != 'i') || tok[1] != '(' || tok.back() != ')')
        throw ParseError("malformed edge end '" + tok + "'", line, 1);
    const std::string label = tok.substr(2, tok.size() - 3);
    auto e = a.find(label);
    if (!e)
        throw ParseError("unknown edge label '" + label + "'", line, 1);
    return {*e, tok[0] == 't' ? End::Terminal : End::Initial};
}

TrainTrack build_track(const PendingTrack& p) {
    if (p.name.empty())
        throw ParseError("track without a name", p.line, 1);
    Alphabet a;
    try {
        a = Alphabet(p.edges);
    } catch (const InvalidTrack& e) {
        throw ParseError(e.what(), p.line, 1);
    }
    std::vector<Switch> sws;
    for (const auto& s : p.switches) {
        Switch sw;
        sw.id = s.id;
        for (const auto& [tok, line] : s.sideA)
            sw.sideA.push_back(parse_end_token(tok, a, line));
        for (const auto& [tok, line] : s.sideB)
            sw.sideB.push_back(parse_end_token(tok, a, line));
        sws.push_back(std::move(sw));
    }
    std::vector<DeclaredBoundary> decl;
    for (const auto& [name, text] : p.boundaries) {
        try {
            decl.push_back({name, parse_word(text.first, a)});
        } catch (const ParseError& e) {
            throw ParseError(e.what(), text.second, 1);
        }
    }
    return TrainTrack(p.name, std::move(a), std::move(sws), std::move(decl));
}

} // namespace

Document parse_document(std::string_view text) {
    Document doc;
    std::vector<PendingTrack> tracks;
    std::vector<PendingMap> maps;
    std::vector<std::tuple<std::string, std::string, std::size_t>> seqs;
    enum class Sec { None, Track, Switch, Boundary, Map, Sequence } sec = Sec::None;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (auto h = raw.find('#'); h != std::string_view::npos)
            raw = raw.substr(0, h);
        const std::string line = trim(raw);
        if (line.empty()) {
            if (nl == text.size())
                break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", lineno, line.size());
            const auto words = split_ws(line.substr(1, line.size() - 2));
            if (words.empty())
                throw ParseError("empty section header", lineno, 2);
            const std::string& kind = words[0];
            const std::string inner = trim(std::string_view(line).substr(1, line.size() - 2));
            const std::string arg = trim(std::string_view(inner).substr(kind.size()));
            if (kind == "track") {
                tracks.push_back({});
                tracks.back().line = lineno;
                if (!arg.empty())
                    tracks.back().name = arg;
                sec = Sec::Track;
            } else if (kind == "switch" || kind == "boundary") {
                if (tracks.empty())
                    throw ParseError("[" + kind + "] before any [track]", lineno, 1);
                if (kind == "switch") {
                    if (arg.empty())
                        throw ParseError("switch without an id", lineno, 1);
                    tracks.back().switches.push_back({arg, {}, {}, lineno});
                    sec = Sec::Switch;
                } else {
                    sec = Sec::Boundary;
                }
            } else if (kind == "map") {
                maps.push_back({arg, "", "", lineno, {}});
                sec = Sec::Map;
            } else if (kind == "sequence") {
                seqs.emplace_back(arg, "", lineno);
                sec = Sec::Sequence;
            } else {
                throw ParseError("unknown section '" + kind + "'", lineno, 2);
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", lineno, 1);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        switch (sec) {
        case Sec::None:
            throw ParseError("key outside of any section", lineno, 1);
        case Sec::Track:
            if (key == "name")
                tracks.back().name = value;
            else if (key == "edges")
                tracks.back().edges = split_ws(value);
            else
                throw ParseError("unknown track key '" + key + "'", lineno, 1);
            break;
        case Sec::Switch: {
            auto& sw = tracks.back().switches.back();
            if (key != "sideA" && key != "sideB")
                throw ParseError("unknown switch key '" + key + "'", lineno, 1);
            auto& dst = key == "sideA" ? sw.sideA : sw.sideB;
            for (const auto& tok : split_ws(value))
                dst.emplace_back(tok, lineno);
            break;
        }
        case Sec::Boundary:
            tracks.back().boundaries.push_back({key, {value, lineno}});
            break;
        case Sec::Map:
            if (key == "source")
                maps.back().source = value;
            else if (key == "target")
                maps.back().target = value;
            else
                maps.back().images.push_back({key, {value, lineno}});
            break;
        case Sec::Sequence:
            if (key != "moves")
                throw ParseError("unknown sequence key '" + key + "'", lineno, 1);
            std::get<1>(seqs.back()) += (std::get<1>(seqs.back()).empty() ? "" : " ") + value;
            break;
        }
        if (nl == text.size())
            break;
    }

    for (const auto& p : tracks)
        doc.tracks.push_back(build_track(p));
    for (const auto& pm : maps) {
        const TrainTrack* src = doc.find_track(pm.source);
        const TrainTrack* tgt = doc.find_track(pm.target);
        if (!src || !tgt)
            throw ParseError("map '" + pm.name + "' refers to an unknown track", pm.line, 1);
        TrackMorphism m;
        m.name = pm.name;
        m.source = *src;
        m.target = *tgt;
        m.images.assign(src->edge_count(), {});
        std::vector<bool> seen(src->edge_count(), false);
        for (const auto& [label, text] : pm.images) {
            auto e = src->alphabet().find(label);
            if (!e)
                throw ParseError("unknown edge label '" + label + "'", text.second, 1);
            try {
                m.images[static_cast<std::size_t>(*e)] = parse_word(text.first, tgt->alphabet());
            } catch (const ParseError& err) {
                throw ParseError(err.what(), text.second, err.column());
            }
            seen[static_cast<std::size_t>(*e)] = true;
        }
        for (std::size_t e = 0; e < seen.size(); ++e)
            if (!seen[e])
                throw ParseError("map '" + pm.name + "' has no image for '" + src->alphabet().name(static_cast<int>(e)) +
                                     "'",
                                 pm.line, 1);
        doc.maps.push_back(std::move(m));
    }
    for (const auto& [name, moves, line] : seqs) {
        try {
            doc.sequences.emplace_back(name, parse_split_notation(moves));
        } catch (const ParseError& err) {
            throw ParseError(err.what(), line, err.column());
        }
    }
    return doc;
}

Document read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FileError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw FileError("write failed for '" + path + "'");
}

std::string format_track(const TrainTrack& track) {
    std::ostringstream os;
    const auto& a = track.alphabet();
    os << "[track]\n";
    os << "name = " << track.name() << "\n";
    os << "edges =";
    for (const auto& n : a.names())
        os << ' ' << n;
    os << "\n";
    for (const auto& sw : track.switches()) {
        os << "\n[switch " << sw.id << "]\n";
        os << "sideA =";
        for (const auto& e : sw.sideA)
            os << ' ' << format_end(a, e);
        os << "\nsideB =";
        for (const auto& e : sw.sideB)
            os << ' ' << format_end(a, e);
        os << "\n";
    }
    if (!track.declared_boundaries().empty()) {
        os << "\n[boundary]\n";
        for (const auto& d : track.declared_boundaries())
            os << d.name << " = " << format_word(d.word, a) << "\n";
    }
    return os.str();
}

std::string format_map(const TrackMorphism& m, bool include_tracks) {
    std::ostringstream os;
    if (include_tracks) {
        os << format_track(m.source) << "\n";
        if (m.target.name() != m.source.name())
            os << format_track(m.target) << "\n";
    }
    os << "[map " << (m.name.empty() ? "map" : m.name) << "]\n";
    os << "source = " << m.source.name() << "\n";
    os << "target = " << m.target.name() << "\n";
    for (std::size_t e = 0; e < m.images.size(); ++e)
        os << m.source.alphabet().name(static_cast<int>(e)) << " = " << format_word(m.images[e], m.target.alphabet())
           << "\n";
    return os.str();
}

std::string format_sequence_section(const std::string& name, const SplitSequence& seq) {
    return "[sequence " + name + "]\nmoves = " + format_sequence(seq) + "\n";
}

} // namespace ttlab
