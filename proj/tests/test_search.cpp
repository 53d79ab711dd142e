#include <doctest.h>

#include <set>

#include "ttlab/atlas.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/io.hpp"
#include "ttlab/search.hpp"

using namespace ttlab;

namespace {

std::string key(const LoopResult& r) {
    std::string s = format_sequence(r.sequence) + "|";
    for (const auto& w : r.self_map.images)
        s += format_word(w, r.self_map.target.alphabet()) + ",";
    return s;
}

std::string image(const TrackMorphism& m, const char* label) {
    return format_word(m.image(label), m.target.alphabet());
}

} // namespace

TEST_CASE("depth one finds no loops") {
    SearchConfig cfg;
    cfg.max_depth = 1;
    SearchStats st;
    const auto res = search_loops(tau(), cfg, &st);
    CHECK(res.empty());
    CHECK(st.nodes == 24);
    CHECK(st.exhausted);
}

TEST_CASE("depth three finds no loops") {
    SearchConfig cfg;
    cfg.max_depth = 3;
    cfg.threads = 4;
    SearchStats st;
    CHECK(search_loops(tau(), cfg, &st).empty());
    CHECK(st.nodes == 8664);
}

TEST_CASE("depth four from the primed track finds the twist loop") {
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.threads = 0;
    SearchStats st;
    const auto res = search_loops(tau_prime(), cfg, &st);
    CHECK(st.nodes == 131808);
    CHECK(st.loop_nodes == 80);
    CHECK(st.identifications == 160);
    bool found = false;
    for (const auto& r : res) {
        if (r.sequence != twist_gi_sequence())
            continue;
        // With i and g exchanged afterwards this is f -> f i, j -> i j, k -> g k g.
        if (image(r.self_map, "f") == "f g" && image(r.self_map, "j") == "g j" && image(r.self_map, "k") == "i k i" &&
            image(r.self_map, "i") == "g" && image(r.self_map, "g") == "i")
            found = true;
    }
    CHECK(found);
}

TEST_CASE("search results do not depend on the thread count") {
    SearchConfig one;
    one.max_depth = 4;
    one.threads = 1;
    SearchConfig many = one;
    many.threads = 6;
    std::vector<std::string> a, b;
    for (const auto& r : search_loops(tau(), one))
        a.push_back(key(r));
    for (const auto& r : search_loops(tau(), many))
        b.push_back(key(r));
    CHECK(a == b);
    CHECK(a.size() == 160);
}

TEST_CASE("filters only remove results") {
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.threads = 0;
    std::set<std::string> all;
    for (const auto& r : search_loops(tau(), cfg))
        all.insert(key(r));
    cfg.require_fixed_point_free = true;
    cfg.require_irreducible = true;
    for (const auto& r : search_loops(tau(), cfg)) {
        CHECK(all.count(key(r)) == 1);
        CHECK(r.certificate.fixed_point_free);
        CHECK(r.certificate.irreducible);
    }
}

TEST_CASE("emitted loops are sound") {
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.threads = 0;
    for (const auto& r : search_loops(tau_prime(), cfg)) {
        const auto applied = apply_sequence(tau_prime(), r.sequence);
        CHECK(isomorphisms(tau_prime(), applied.track).size() >= 1);
        CHECK(check_morphism(r.self_map).valid());
    }
}

TEST_CASE("node limit") {
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.max_nodes = 100;
    CHECK_THROWS_AS(search_loops(tau(), cfg), ResourceLimit);
}

TEST_CASE("replay") {
    const auto id = replay(tau(), {}, identity_isomorphism(tau()));
    CHECK(id.certificate.verdict == Verdict::Inconclusive);
    CHECK(id.self_map.images == identity_morphism(tau()).images);

    // The first loop is written in the initial labels; replay there and carry the result over.
    const auto applied = apply_sequence(tau_initial(), first_loop_sequence());
    bool reducible_found = false;
    for (const auto& iso : isomorphisms(tau_initial(), applied.track)) {
        const auto r = replay(tau_initial(), first_loop_sequence(), iso);
        reducible_found = reducible_found || r.certificate.verdict == Verdict::Reducible;
    }
    CHECK(reducible_found);

    auto bogus = identity_isomorphism(tau());
    std::swap(bogus.edge_map[0], bogus.edge_map[1]);
    CHECK_THROWS_AS(replay(tau(), {}, bogus), NotAnIdentification);
    CHECK_THROWS_AS(replay(tau(), parse_split_notation("t(z)/i(a)"), identity_isomorphism(tau())), IllegalMove);
}
