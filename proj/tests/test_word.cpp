#include <doctest.h>

#include "ttlab/errors.hpp"
#include "ttlab/word.hpp"

using namespace ttlab;

namespace {
const Alphabet abc({"a", "b", "c", "d"});
EdgeWord w(const char* s) { return parse_word(s, abc); }
} // namespace

TEST_CASE("words parse and format") {
    CHECK(format_word(w("a -b c"), abc) == "a -b c");
    CHECK(w("").empty());
    CHECK_THROWS_AS(w("a x"), ParseError);
}

TEST_CASE("inverse is an involution") {
    const auto x = w("a -b c -d");
    CHECK(format_word(inverse(x), abc) == "d -c b -a");
    CHECK(inverse(inverse(x)) == x);
}

TEST_CASE("free and cyclic reduction") {
    CHECK(format_word(reduced(w("a b -b c")), abc) == "a c");
    CHECK(format_word(reduced(w("a b -b -a")), abc).empty());
    CHECK(is_reduced(w("a b c")));
    CHECK_FALSE(is_reduced(w("a -a")));
    CHECK(format_word(cyclically_reduced(w("-c a b c")), abc) == "a b");
}

TEST_CASE("rotations") {
    const auto x = w("a b c d");
    const auto y = w("c d a b");
    REQUIRE(rotations_onto(x, y) == std::vector<std::size_t>{2});
    CHECK(rotated(x, 2) == y);
    CHECK(is_rotation_of(x, y));
    CHECK_FALSE(is_rotation_of(x, w("a b d c")));
    CHECK(rotations_onto(w("a b a b"), w("a b a b")) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("substitution and occurrence counts") {
    std::vector<EdgeWord> images{w("a b"), w("c"), w("d"), w("a")};
    CHECK(format_word(substitute(w("a -b"), images), abc) == "a b -c");
    CHECK(occurrences(w("a -a b a"), 0) == 3);
}
