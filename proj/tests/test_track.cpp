#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "ttlab/atlas.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/io.hpp"

using namespace ttlab;

namespace {

TrainTrack from_text(const std::string& text) { return parse_document(text).tracks.at(0); }

const char* const loop_track = R"(
[track]
name = loop
edges = a
[switch v]
sideA = i(a)
sideB = t(a)
)";

// Möbius-like: a single edge returning to the side it left from.
const char* const twisted_track = R"(
[track]
name = twisted
edges = a b
[switch v]
sideA = i(a) t(a)
sideB = i(b) t(b)
)";

std::set<std::pair<std::string, int>> oracle_curves(const TrainTrack& t) {
    std::set<std::pair<std::string, int>> out;
    for (const auto& c : oracle::boundaries(t))
        out.insert({oracle::canonical_cyclic(c.word), c.cusps});
    return out;
}

std::set<std::pair<std::string, int>> library_curves(const TrainTrack& t) {
    std::set<std::pair<std::string, int>> out;
    for (const auto& c : boundary_cycles(t))
        out.insert({oracle::canonical_cyclic(oracle::tokens(format_word(c.word, t.alphabet()))),
                    static_cast<int>(c.cusp_count())});
    return out;
}

} // namespace

TEST_CASE("base track structure") {
    const auto& t = tau();
    CHECK(validate(t).valid());
    const auto ed = euler_data(t);
    CHECK(ed.vertices == 6);
    CHECK(ed.edges == 12);
    CHECK(ed.chi == -6);
    CHECK(ed.boundaries == 2);
    REQUIRE(ed.genus.has_value());
    CHECK(*ed.genus == 3);
    CHECK(singularity_type(t) == std::vector<int>{6, 6});
    CHECK(cusp_count(t) == 12);
    for (const auto& s : t.switches()) {
        CHECK(s.sideA.size() == 2);
        CHECK(s.sideB.size() == 2);
    }
}

TEST_CASE("boundary tracing agrees with the oracle") {
    for (const auto* t : {&tau(), &tau_prime(), &tau_initial()})
        CHECK(oracle_curves(*t) == library_curves(*t));
}

TEST_CASE("base track boundaries reproduce the published words") {
    const auto& t = tau();
    const auto curves = boundary_cycles(t);
    REQUIRE(curves.size() == 2);
    std::set<std::string> got, want;
    for (const auto& c : curves) {
        CHECK(c.word.size() == 12);
        CHECK(c.cusp_count() == 6);
        got.insert(oracle::canonical_cyclic(oracle::tokens(format_word(c.word, t.alphabet()))));
    }
    want.insert(oracle::canonical_cyclic(oracle::tokens(atlas_data::boundary1)));
    want.insert(oracle::canonical_cyclic(oracle::tokens(atlas_data::boundary2)));
    CHECK(got == want);
}

TEST_CASE("primed track boundaries reproduce the published words") {
    const auto& t = tau_prime();
    std::set<std::string> got, want;
    for (const auto& c : boundary_cycles(t))
        got.insert(oracle::canonical_cyclic(oracle::tokens(format_word(c.word, t.alphabet()))));
    want.insert(oracle::canonical_cyclic(oracle::tokens(atlas_data::prime_boundary1)));
    want.insert(oracle::canonical_cyclic(oracle::tokens(atlas_data::prime_boundary2)));
    CHECK(got == want);
    const auto ed = euler_data(t);
    CHECK(ed.chi == -6);
    CHECK(ed.genus == 3);
    CHECK(singularity_type(t) == std::vector<int>{6, 6});
}

TEST_CASE("boundary length and cusp conservation") {
    for (const auto* t : {&tau(), &tau_prime(), &tau_initial()}) {
        std::size_t letters = 0, cusps = 0;
        for (const auto& c : boundary_cycles(*t)) {
            letters += c.word.size();
            cusps += c.cusp_count();
        }
        CHECK(letters == 2 * t->edge_count());
        std::size_t expected = 0;
        for (const auto& s : t->switches())
            expected += s.sideA.size() - 1 + s.sideB.size() - 1;
        CHECK(cusps == expected);
    }
}

TEST_CASE("validation reports structural problems") {
    const auto empty_side = from_text(R"(
[track]
name = bad
edges = a
[switch v]
sideA = i(a) t(a)
sideB =
)");
    const auto r1 = validate(empty_side);
    REQUIRE_FALSE(r1.valid());
    CHECK(r1.problems.front().find("side empty") != std::string::npos);

    const auto triple = from_text(R"(
[track]
name = bad
edges = a b
[switch v]
sideA = i(a) t(a)
sideB = t(a) i(b)
[switch w]
sideA = t(b)
sideB = i(a)
)");
    const auto r2 = validate(triple);
    REQUIRE_FALSE(r2.valid());
    bool found = false;
    for (const auto& p : r2.problems)
        found = found || p.find("end multiplicity") != std::string::npos;
    CHECK(found);
    CHECK_THROWS_AS(require_valid(triple), InvalidTrack);
}

TEST_CASE("declared boundaries are checked") {
    auto t = tau();
    std::vector<DeclaredBoundary> wrong{{"d1", parse_word("a b c", t.alphabet())}};
    CHECK_FALSE(validate(t.with_declared_boundaries(wrong)).valid());
    CHECK(validate(t.without_declared_boundaries()).valid());
}

TEST_CASE("single loop track") {
    const auto t = from_text(loop_track);
    REQUIRE(validate(t).valid());
    const auto ed = euler_data(t);
    CHECK(ed.vertices == 1);
    CHECK(ed.edges == 1);
    CHECK(ed.chi == 0);
    // The annulus has two boundary curves, one on each side of the loop.
    CHECK(ed.boundaries == 2);
    CHECK(ed.genus == 0);
    const auto curves = boundary_cycles(t);
    REQUIRE(curves.size() == 2);
    for (const auto& c : curves) {
        CHECK(c.word.size() == 1);
        CHECK(c.cusp_count() == 0);
    }
    CHECK(singularity_type(t) == std::vector<int>{0, 0});
    CHECK(orientation(t).orientable());
    CHECK_FALSE(automorphisms(t).empty());
    CHECK(automorphisms(t).front().is_identity());
    CHECK_FALSE(isomorphism(tau(), t).has_value());
    CHECK_THROWS_AS(legal_splits(t), NoSplitAvailable);
}

TEST_CASE("orientation") {
    const auto o = orientation(tau());
    REQUIRE(o.orientable());
    CHECK(o.assignment->agrees_with_labels());
    const auto op = orientation(tau_prime());
    REQUIRE(op.orientable());
    CHECK(op.assignment->agrees_with_labels());

    const auto bad = orientation(from_text(twisted_track));
    CHECK_FALSE(bad.orientable());
    CHECK_FALSE(bad.witness_edges.empty());
}

TEST_CASE("automorphism groups") {
    const auto emb = automorphisms(tau());
    CHECK(emb.size() == 2);
    // Parallel pairs {a,c} and {i,k} can be exchanged once the ribbon order is forgotten.
    CHECK(automorphisms(tau(), {MatchMode::Abstract, false, true}).size() == 8);
    CHECK(automorphisms(tau(), {MatchMode::Abstract, true, true}).size() == 16);

    // Closed under composition, contains identity.
    for (const auto& g : emb)
        for (const auto& h : emb)
            CHECK(std::find(emb.begin(), emb.end(), compose(g, h)) != emb.end());
    int identities = 0;
    for (const auto& g : emb)
        identities += g.is_identity();
    CHECK(identities == 1);
    for (const auto& g : emb)
        CHECK(compose(g, g).is_identity());
}

TEST_CASE("relabeling gives an isomorphic track") {
    const auto iso = isomorphism(tau(), tau_prime());
    REQUIRE(iso.has_value());
    const auto& names = tau().alphabet().names();
    // i and g are exchanged, all other labels fixed.
    for (std::size_t e = 0; e < names.size(); ++e) {
        const auto target = names[static_cast<std::size_t>(iso->edge_map[e].edge)];
        if (names[e] == "i")
            CHECK(target == "g");
        else if (names[e] == "g")
            CHECK(target == "i");
        else
            CHECK(target == names[e]);
    }
}

TEST_CASE("euler data invariant under automorphism relabeling") {
    const auto ed = euler_data(tau());
    for (const auto& g : automorphisms(tau())) {
        std::vector<int> perm;
        for (const auto& se : g.edge_map)
            perm.push_back(se.edge);
        const auto r = relabel(tau(), perm);
        const auto e2 = euler_data(r.track);
        CHECK(e2.chi == ed.chi);
        CHECK(e2.boundaries == ed.boundaries);
        CHECK(library_curves(r.track).size() == library_curves(tau()).size());
    }
}

TEST_CASE("dot export") {
    const auto dot = to_dot(tau());
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("v1") != std::string::npos);
    CHECK(dot.find("label=\"a\"") != std::string::npos);
}
