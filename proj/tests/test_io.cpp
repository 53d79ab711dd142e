#include <doctest.h>

#include "ttlab/atlas.hpp"
#include "ttlab/errors.hpp"
#include "ttlab/io.hpp"

using namespace ttlab;

TEST_CASE("track round trip") {
    for (const auto* t : {&tau(), &tau_prime(), &tau_initial()}) {
        const auto text = format_track(*t);
        const auto doc = parse_document(text);
        REQUIRE(doc.tracks.size() == 1);
        CHECK(same_labelled_track(doc.tracks[0], *t));
        CHECK(format_track(doc.tracks[0]) == text);
    }
}

TEST_CASE("map round trip") {
    for (const auto& m : {phi1_map(), phi2_map(), twist_ig_map(), phi(7)}) {
        const auto doc = parse_document(format_map(m));
        REQUIRE(doc.maps.size() == 1);
        CHECK(same_images(doc.maps[0], m));
        CHECK(doc.maps[0].name == m.name);
    }
}

TEST_CASE("sequence round trip") {
    const auto doc = parse_document(format_sequence_section("S1", first_loop_sequence()));
    REQUIRE(doc.sequences.size() == 1);
    CHECK(doc.sequences[0].first == "S1");
    CHECK(doc.sequences[0].second == first_loop_sequence());
}

TEST_CASE("comments and errors") {
    const auto doc = parse_document(R"(
# a comment
[track]
name = loop   # trailing comment
edges = a
[switch v]
sideA = i(a)
sideB = t(a)
)");
    CHECK(doc.tracks.at(0).name() == "loop");
    CHECK_THROWS_AS(parse_document("[track]\nname = x\nedges = a\n[switch v]\nsideA = q(a)\n"), ParseError);
    CHECK_THROWS_AS(parse_document("[bogus]\n"), ParseError);
    CHECK_THROWS_AS(read_document("/nonexistent/file.tt"), FileError);
}
