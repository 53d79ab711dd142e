#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttlab/atlas.hpp"
#include "ttlab/certifier.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/io.hpp"
#include "ttlab/search.hpp"

using namespace ttlab;
using nlohmann::json;

namespace {

// Wrong input rather than wrong answer; mapped to exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr std::string_view kAtlas = "atlas:";

bool is_atlas(const std::string& spec) { return spec.rfind(kAtlas, 0) == 0; }

AtlasEntry atlas_entry(const std::string& spec) {
    try {
        return atlas(spec.substr(kAtlas.size()));
    } catch (const UnknownEntry& e) {
        throw UsageError(e.what());
    }
}

Document load(const std::string& path) {
    try {
        return read_document(path);
    } catch (const FileError& e) {
        throw UsageError(e.what());
    }
}

TrainTrack load_track(const std::string& spec) {
    if (is_atlas(spec)) {
        auto e = atlas_entry(spec);
        if (e.track)
            return *e.track;
        if (e.map)
            return e.map->source;
        throw UsageError("'" + spec + "' carries no track");
    }
    auto doc = load(spec);
    if (doc.tracks.empty())
        throw UsageError("no [track] section in " + spec);
    return doc.tracks.front();
}

TrackMorphism load_map(const std::string& spec) {
    if (is_atlas(spec)) {
        auto e = atlas_entry(spec);
        if (!e.map)
            throw UsageError("'" + spec + "' is not a map");
        return *e.map;
    }
    auto doc = load(spec);
    if (doc.maps.empty())
        throw UsageError("no [map] section in " + spec);
    return doc.maps.front();
}

// A sequence file, an atlas entry, or move notation given inline.
std::pair<std::string, SplitSequence> load_sequence(const std::string& spec) {
    if (is_atlas(spec)) {
        auto e = atlas_entry(spec);
        if (!e.sequence)
            throw UsageError("'" + spec + "' is not a sequence");
        return {e.name, *e.sequence};
    }
    if (std::filesystem::exists(spec)) {
        auto doc = load(spec);
        if (!doc.sequences.empty())
            return doc.sequences.front();
        std::ifstream in(spec);
        std::stringstream ss;
        ss << in.rdbuf();
        return {std::filesystem::path(spec).stem().string(), parse_split_notation(ss.str())};
    }
    if (spec.find('/') == std::string::npos || spec.find('(') == std::string::npos)
        throw UsageError("cannot open " + spec);
    return {"inline", parse_split_notation(spec)};
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
}

std::string ints(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? "," : "") + std::to_string(v[k]);
    return s + "}";
}

// Marks cusps with '|' after the letter they follow.
std::string curve_text(const BoundaryCurve& c, const Alphabet& a) {
    std::string s;
    for (std::size_t k = 0; k < c.word.size(); ++k) {
        s += (k ? " " : "") + format_word({c.word[k]}, a);
        if (c.cusp_after[k])
            s += " |";
    }
    return s;
}

int cmd_track_validate(const std::string& file, bool as_json) {
    const auto t = load_track(file);
    const auto rep = validate(t);
    if (as_json)
        std::cout << json{{"track", t.name()}, {"valid", rep.valid()}, {"problems", rep.problems}}.dump(2) << "\n";
    else if (rep.valid())
        std::cout << t.name() << ": valid\n";
    else
        for (const auto& p : rep.problems)
            std::cout << t.name() << ": " << p << "\n";
    return rep.valid() ? 0 : 1;
}

int cmd_track_info(const std::string& file, bool as_json) {
    const auto t = load_track(file);
    require_valid(t);
    const auto ed = euler_data(t);
    const auto ori = orientation(t);
    const auto emb = automorphisms(t).size();
    const auto abs = automorphisms(t, {MatchMode::Abstract, false, true}).size();
    std::size_t moves = 0;
    try {
        moves = legal_splits(t).size();
    } catch (const NoSplitAvailable&) {
    }
    if (as_json) {
        json j{{"track", t.name()},        {"vertices", ed.vertices},
               {"edges", ed.edges},        {"euler_characteristic", ed.chi},
               {"boundaries", ed.boundaries}, {"components", ed.components},
               {"singularity_type", singularity_type(t)}, {"orientable", ori.orientable()},
               {"automorphisms_embedded", emb}, {"automorphisms_abstract", abs},
               {"legal_splits", moves}};
        j["genus"] = ed.genus ? json(*ed.genus) : json(nullptr);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "track " << t.name() << "\n"
              << "  switches " << ed.vertices << ", edges " << ed.edges << ", euler characteristic " << ed.chi << "\n"
              << "  boundary curves " << ed.boundaries << ", genus "
              << (ed.genus ? std::to_string(*ed.genus) : std::string("undefined")) << "\n"
              << "  singularity type " << ints(singularity_type(t)) << "\n"
              << "  orientable " << (ori.orientable() ? "yes" : "no") << "\n"
              << "  automorphisms " << emb << " embedded, " << abs << " abstract\n"
              << "  legal splits " << moves << "\n";
    return 0;
}

int cmd_track_boundaries(const std::string& file, bool as_json) {
    const auto t = load_track(file);
    const auto curves = boundary_cycles(t);
    json arr = json::array();
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& c = curves[k];
        if (as_json)
            arr.push_back({{"word", format_word(c.word, t.alphabet())},
                           {"cusps", c.cusp_count()},
                           {"cusp_junctions", c.cusp_junctions()}});
        else
            std::cout << "curve " << k + 1 << " (" << c.cusp_count() << " cusps): " << curve_text(c, t.alphabet())
                      << "\n";
    }
    if (as_json)
        std::cout << arr.dump(2) << "\n";
    return 0;
}

int cmd_map_check(const std::string& file, bool as_json) {
    const auto m = load_map(file);
    const auto rep = check_morphism(m);
    if (as_json)
        std::cout << json{{"map", m.name}, {"valid", rep.valid()}, {"problems", rep.problems}}.dump(2) << "\n";
    else if (rep.valid())
        std::cout << m.name << ": valid train-track map\n";
    else
        for (const auto& p : rep.problems)
            std::cout << m.name << ": " << p << "\n";
    return rep.valid() ? 0 : 1;
}

int cmd_map_certify(const std::string& file, bool as_json, long double tol, const std::string& expect) {
    const auto m = load_map(file);
    const auto c = certify(m, tol);
    std::cout << (as_json ? certificate_json(c) : certificate_text(c));
    if (!expect.empty() && expect != verdict_name(c.verdict)) {
        std::cerr << "expected " << expect << ", got " << verdict_name(c.verdict) << "\n";
        return 1;
    }
    return 0;
}

int cmd_map_dilatation(const std::string& file, bool as_json, long double tol) {
    const auto m = load_map(file);
    const auto M = incidence_matrix(m);
    const auto d = dilatation(M, tol);
    if (as_json) {
        std::ostringstream lo, hi;
        lo << std::setprecision(21) << d.lower;
        hi << std::setprecision(21) << d.upper;
        std::cout << json{{"map", m.name},
                          {"lambda", static_cast<double>(d.lambda)},
                          {"lower", lo.str()},
                          {"upper", hi.str()},
                          {"iterations", d.iterations}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << std::setprecision(18) << m.name << ": " << d.lambda << " in [" << d.lower << ", " << d.upper
                  << "]\n";
    }
    return 0;
}

int cmd_map_compose(const std::string& outer, const std::string& inner, const std::string& out) {
    auto m = compose(load_map(outer), load_map(inner));
    emit(format_map(m), out);
    return 0;
}

int cmd_seq_parse(const std::string& spec) {
    const auto [name, seq] = load_sequence(spec);
    std::cout << format_sequence_section(name, seq);
    return 0;
}

int cmd_seq_apply(const std::string& track_spec, const std::string& seq_spec, const std::string& out) {
    const auto seed = load_track(track_spec);
    const auto [name, seq] = load_sequence(seq_spec);
    auto res = apply_sequence(seed, seq);
    res.track = res.track.renamed(seed.name() + "." + name);
    res.morphism.source = res.track;
    res.morphism.name = name;
    emit(format_map(res.morphism) + "\n" + format_sequence_section(name, seq), out);
    return 0;
}

int cmd_atlas_list() {
    for (const auto& n : atlas_names()) {
        const auto e = atlas(n);
        std::cout << std::left << std::setw(16) << n << std::setw(9) << kind_name(e.kind) << e.note << "\n";
    }
    return 0;
}

std::string entry_text(const AtlasEntry& e) {
    std::string text;
    if (e.map)
        text += format_map(*e.map);
    else if (e.track)
        text += format_track(*e.track);
    if (e.sequence)
        text += (text.empty() ? "" : "\n") + format_sequence_section(e.name, *e.sequence);
    return text;
}

int cmd_atlas_export(const std::string& name, const std::string& out) {
    emit(entry_text(atlas_entry(std::string(kAtlas) + name)), out);
    return 0;
}

int cmd_search(const std::string& file, const SearchConfig& cfg, const std::string& out, bool as_json) {
    const auto seed = load_track(file);
    if (!out.empty())
        std::filesystem::create_directories(out);
    std::size_t k = 0;
    json arr = json::array();
    const auto stats = search_loops(seed, cfg, [&](const LoopResult& r) {
        ++k;
        std::ostringstream id;
        id << "loop_" << std::setw(4) << std::setfill('0') << k;
        if (!out.empty()) {
            auto m = r.self_map;
            m.name = id.str();
            write_text_file((std::filesystem::path(out) / (id.str() + ".tt")).string(),
                            format_map(m) + "\n" + format_sequence_section(id.str(), r.sequence));
        }
        if (as_json)
            arr.push_back({{"id", id.str()},
                           {"sequence", format_sequence(r.sequence)},
                           {"verdict", verdict_name(r.certificate.verdict)},
                           {"fixed_point_free", r.certificate.fixed_point_free},
                           {"irreducible", r.certificate.irreducible}});
        else
            std::cout << id.str() << "  " << format_sequence(r.sequence) << "  "
                      << verdict_name(r.certificate.verdict) << "\n";
    });
    if (as_json)
        std::cout << json{{"nodes", stats.nodes},
                          {"loop_nodes", stats.loop_nodes},
                          {"identifications", stats.identifications},
                          {"emitted", stats.emitted},
                          {"loops", arr}}
                         .dump(2)
                  << "\n";
    else
        std::cout << stats.nodes << " nodes, " << stats.loop_nodes << " loop nodes, " << stats.identifications
                  << " identifications, " << stats.emitted << " emitted\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ttlab: train tracks, splitting sequences and their self-maps"};
    app.require_subcommand(1);
    bool as_json = false;
    long double tol = 1e-10L;
    std::string out, expect;
    std::string file, file2;
    int n = 1;
    SearchConfig cfg;

    auto add_json = [&](CLI::App* c) { c->add_flag("--json", as_json, "machine-readable output"); };
    auto add_tol = [&](CLI::App* c) {
        c->add_option("--tol", tol, "width of the dilatation bracket")->check(CLI::PositiveNumber);
    };
    std::function<int()> action;

    auto* track = app.add_subcommand("track", "track files")->require_subcommand(1);
    auto* tv = track->add_subcommand("validate", "structural checks");
    tv->add_option("file", file)->required();
    add_json(tv);
    tv->callback([&] { action = [&] { return cmd_track_validate(file, as_json); }; });
    auto* ti = track->add_subcommand("info", "topological summary");
    ti->add_option("file", file)->required();
    add_json(ti);
    ti->callback([&] { action = [&] { return cmd_track_info(file, as_json); }; });
    auto* tb = track->add_subcommand("boundaries", "complementary boundary curves");
    tb->add_option("file", file)->required();
    add_json(tb);
    tb->callback([&] { action = [&] { return cmd_track_boundaries(file, as_json); }; });
    auto* td = track->add_subcommand("export-dot", "Graphviz rendering");
    td->add_option("file", file)->required();
    td->add_option("--out", out);
    td->callback([&] { action = [&] { return emit(to_dot(load_track(file)), out), 0; }; });

    auto* map = app.add_subcommand("map", "track maps")->require_subcommand(1);
    auto* mc = map->add_subcommand("check", "cellularity and smoothness");
    mc->add_option("file", file)->required();
    add_json(mc);
    mc->callback([&] { action = [&] { return cmd_map_check(file, as_json); }; });
    auto* mz = map->add_subcommand("certify", "pseudo-Anosov certificate");
    mz->add_option("file", file)->required();
    mz->add_option("--expect", expect)->check(CLI::IsMember({"pA", "reducible", "inconclusive"}));
    add_json(mz);
    add_tol(mz);
    mz->callback([&] { action = [&] { return cmd_map_certify(file, as_json, tol, expect); }; });
    auto* md = map->add_subcommand("dilatation", "Perron-Frobenius eigenvalue");
    md->add_option("file", file)->required();
    add_json(md);
    add_tol(md);
    md->callback([&] { action = [&] { return cmd_map_dilatation(file, as_json, tol); }; });
    auto* mo = map->add_subcommand("compose", "OUTER after INNER");
    mo->add_option("outer", file)->required();
    mo->add_option("inner", file2)->required();
    mo->add_option("--out", out);
    mo->callback([&] { action = [&] { return cmd_map_compose(file, file2, out); }; });

    auto* seq = app.add_subcommand("seq", "split sequences")->require_subcommand(1);
    auto* sp = seq->add_subcommand("parse", "normalize move notation");
    sp->add_option("sequence", file)->required();
    sp->callback([&] { action = [&] { return cmd_seq_parse(file); }; });
    auto* sa = seq->add_subcommand("apply", "split a track along a sequence");
    sa->add_option("track", file)->required();
    sa->add_option("sequence", file2)->required();
    sa->add_option("--out", out);
    sa->callback([&] { action = [&] { return cmd_seq_apply(file, file2, out); }; });

    auto* at = app.add_subcommand("atlas", "built-in tracks, maps and sequences")->require_subcommand(1);
    at->add_subcommand("list", "entry names")->callback([&] { action = [&] { return cmd_atlas_list(); }; });
    auto* ae = at->add_subcommand("export", "write an entry");
    ae->add_option("name", file)->required();
    ae->add_option("--out", out);
    ae->callback([&] { action = [&] { return cmd_atlas_export(file, out); }; });
    auto* ap = at->add_subcommand("phi", "odd family member");
    ap->add_option("--n", n, "odd index, at least 3")->required();
    ap->add_option("--out", out);
    ap->callback([&] { action = [&] { return emit(format_map(phi(n)), out), 0; }; });
    auto* as = at->add_subcommand("psi", "double-twist family member");
    as->add_option("--n", n, "at least 1")->required();
    as->add_option("--out", out);
    as->callback([&] { action = [&] { return emit(format_map(psi(n)), out), 0; }; });

    auto* search = app.add_subcommand("search", "loop enumeration")->require_subcommand(1);
    auto* sl = search->add_subcommand("loops", "closed splitting sequences from a seed");
    sl->add_option("file", file)->required();
    sl->add_option("--depth", cfg.max_depth)->required()->check(CLI::PositiveNumber);
    sl->add_flag("--fpf", cfg.require_fixed_point_free, "keep fixed-point-free self-maps only");
    sl->add_flag("--irreducible", cfg.require_irreducible, "keep irreducible self-maps only");
    sl->add_option("--threads", cfg.threads, "0 = hardware concurrency");
    sl->add_option("--out", out, "directory for one file per loop");
    add_json(sl);
    sl->callback([&] { action = [&] { return cmd_search(file, cfg, out, as_json); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "ttlab: " << e.what() << "\n";
        return 2;
    } catch (const BadIndex& e) {
        std::cerr << "ttlab: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "ttlab: " << e.what() << "\n";
        return 2;
    } catch (const FileError& e) {
        std::cerr << "ttlab: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "ttlab: " << e.what() << "\n";
        return 1;
    }
}
