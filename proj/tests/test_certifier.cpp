#include <doctest.h>

#include "oracle.hpp"
#include "ttlab/atlas.hpp"
#include "ttlab/certifier.hpp"
#include "ttlab/errors.hpp"

using namespace ttlab;

namespace {

IncidenceMatrix square(std::vector<std::vector<std::int64_t>> rows) {
    IncidenceMatrix m;
    for (std::size_t k = 0; k < rows.size(); ++k)
        m.labels.push_back(std::string(1, static_cast<char>('a' + k)));
    m.entries = std::move(rows);
    return m;
}

oracle::StringMap as_strings(const TrackMorphism& m) {
    oracle::StringMap out;
    for (std::size_t e = 0; e < m.images.size(); ++e)
        out[m.source.alphabet().name(static_cast<int>(e))] = format_word(m.images[e], m.target.alphabet());
    return out;
}

std::size_t col(const TrackMorphism& m, const char* label) {
    return static_cast<std::size_t>(m.source.alphabet().index(label));
}

} // namespace

TEST_CASE("incidence matrix rows") {
    const auto M = incidence_matrix(phi2_map());
    const auto k = col(phi2_map(), "k");
    for (const char* e : {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"}) {
        const std::int64_t want = std::string(e) == "a" ? 2 : (std::string("dhl").find(e) != std::string::npos ? 1 : 0);
        CHECK(M(k, col(phi2_map(), e)) == want);
    }
    CHECK(incidence_matrix(identity_morphism(tau())).is_permutation());
    CHECK_THROWS_AS(incidence_matrix(twist_ig_map()), NotASelfMap);
}

TEST_CASE("incidence matrix agrees with the counting oracle") {
    for (const auto& m : {phi1_map(), phi2_map(), phi(5), psi(2)}) {
        const auto want = oracle::count_matrix(as_strings(m));
        const auto got = incidence_matrix(m);
        for (std::size_t r = 0; r < want.size(); ++r)
            for (std::size_t c = 0; c < want.size(); ++c)
                CHECK(got(r, c) == want[r][c]);
    }
}

TEST_CASE("fixed edges") {
    CHECK(fixed_edge_points(phi1_map()).empty());
    CHECK(fixed_edge_points(phi2_map()).empty());
    for (int n = 1; n <= 5; ++n)
        CHECK(fixed_edge_points(phi(2 * n + 1)).empty());
    const auto m = morphism_from_text("ac", tau(), tau(), {{"a", "a c"}});
    CHECK(fixed_edge_points(m) == std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"});
    const auto only_a = morphism_from_text("x", tau(), tau(), {{"a", "a c"}, {"b", "c"}});
    CHECK(fixed_edge_points(only_a).front() == "a");
}

TEST_CASE("irreducibility") {
    const auto r1 = irreducibility(incidence_matrix(phi1_map()));
    CHECK_FALSE(r1.irreducible);
    CHECK(r1.witness == std::vector<std::string>{"a", "c", "d", "f", "g", "h", "j", "k", "l"});
    CHECK(irreducibility(incidence_matrix(phi2_map())).irreducible);
    const auto id = irreducibility(square({{1, 0}, {0, 1}}));
    CHECK_FALSE(id.irreducible);
    CHECK(id.witness.size() == 1);
}

TEST_CASE("primitivity") {
    CHECK(primitivity(incidence_matrix(phi2_map())));
    CHECK(primitivity(incidence_matrix(phi(5))));
    CHECK_FALSE(primitivity(square({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})));
    CHECK_THROWS_AS(primitivity(incidence_matrix(phi1_map())), NotIrreducible);
}

TEST_CASE("dilatation") {
    const auto d3 = dilatation(square({{3}}));
    CHECK(d3.lambda == 3.0L);
    CHECK(d3.width() == 0.0L);

    // Golden-mean matrix.
    const auto g = dilatation(square({{1, 1}, {1, 0}}));
    CHECK(std::abs(static_cast<double>(g.lambda) - (1 + std::sqrt(5.0)) / 2) < 1e-10);

    const auto d = dilatation(incidence_matrix(phi2_map()));
    CHECK(d.width() < 1e-10L);
    CHECK(d.lower <= d.lambda);
    CHECK(d.lambda <= d.upper);
    CHECK(d.lambda > 1);
    const double ref = oracle::perron_root(oracle::count_matrix(as_strings(phi2_map())));
    CHECK(std::abs(static_cast<double>(d.lambda) - ref) < 1e-9);
    // Frozen from the oracle; the certified bracket must contain it.
    CHECK(d.lower <= 2.29663026288654L + 1e-13L);
    CHECK(d.upper >= 2.29663026288654L - 1e-13L);
    long double s = 0;
    for (auto w : d.widths) {
        CHECK(w > 0);
        s += w;
    }
    CHECK(std::abs(static_cast<double>(s) - 1.0) < 1e-12);
    CHECK_THROWS_AS(dilatation(square({{0, 1}, {1, 0}})), NotIrreducible);
    CHECK_THROWS_AS(dilatation(incidence_matrix(phi2_map()), 1e-30L, 5), NoConvergence);
}

TEST_CASE("family dilatations") {
    // Frozen from the oracle Perron roots.
    const double expect[] = {2.73477060315287, 3.43426567154273, 4.00653256785171, 4.50317771147691,
                             4.94806500287775};
    long double prev_upper = 0;
    for (int n = 1; n <= 5; ++n) {
        const auto m = phi(2 * n + 1);
        const auto d = dilatation(incidence_matrix(m));
        CHECK(d.lower <= expect[n - 1] + 1e-13);
        CHECK(d.upper >= expect[n - 1] - 1e-13);
        CHECK(std::abs(static_cast<double>(d.lambda) - oracle::perron_root(oracle::count_matrix(as_strings(m)))) <
              1e-9);
        CHECK(d.lower > prev_upper);
        prev_upper = d.upper;
    }
}

TEST_CASE("boundary action of the first map") {
    const auto act = boundary_action(phi1_map());
    REQUIRE(act.actions.size() == 2);
    CHECK(act.permutation == std::vector<std::size_t>{0, 1});
    for (const auto& a : act.actions) {
        CHECK(a.source == a.target);
        CHECK(a.cusp_shift != 0);
        CHECK(a.rotation != 0);
    }
}

TEST_CASE("boundary action of the identity") {
    const auto act = boundary_action(identity_morphism(tau()));
    for (const auto& a : act.actions) {
        CHECK(a.rotation == 0);
        CHECK(a.cusp_shift == 0);
        for (auto c : a.cancellation)
            CHECK(c == 0);
    }
}

TEST_CASE("boundary action of the second map") {
    const auto act = boundary_action(phi2_map());
    CHECK(act.permutation == std::vector<std::size_t>{0, 1});
    std::set<std::string> words;
    for (const auto& c : act.curves)
        words.insert(oracle::canonical_cyclic(oracle::tokens(format_word(c.word, tau_prime().alphabet()))));
    CHECK(words.count(oracle::canonical_cyclic(oracle::tokens("c d -b -j i k -g -f h l -e -a"))) == 1);
    CHECK(words.count(oracle::canonical_cyclic(oracle::tokens("l c -a -e d h -j -g k i -f -b"))) == 1);
}

TEST_CASE("non-boundary-preserving maps are rejected") {
    CHECK_THROWS_AS(boundary_action(morphism_from_text("y", tau(), tau(), {{"b", "b b"}})), BoundaryNotPreserved);
    CHECK_THROWS_AS(boundary_action(twist_ig_map()), NotASelfMap);
}

TEST_CASE("side dynamics of the second map") {
    const auto sd = side_dynamics(phi2_map());
    REQUIRE(sd.sides.size() == 12);
    for (const auto& s : sd.sides_report) {
        CHECK(s.period == 3);
        CHECK(s.periodic_points == 1);
        CHECK(s.junction_points == 0);
        CHECK_FALSE(s.degenerate);
    }
    CHECK(sd.single_periodic_point());

    // Side [c d]: oracle from the marked letters k.[i.k*].j, e.a.d.[h*.l].a, l.[c*.d].f.
    // c goes to the third piece of k i k, k to the third piece of a d h l a,
    // h to the second piece of l c d: x -> 3x - 2 -> 5y - 2 -> 3z - 1.
    const Rational x = Rational(37, 44);
    CHECK(3 * (5 * (3 * x - 2) - 2) - 1 == x);
    bool seen = false;
    for (std::size_t k = 0; k < sd.sides.size(); ++k) {
        if (format_word(sd.sides[k], tau_prime().alphabet()) != "c d")
            continue;
        seen = true;
        const auto& s = sd.sides_report[k];
        REQUIRE(s.points.size() == 1);
        CHECK(s.points[0].letter == 0);
        CHECK(s.points[0].position == x);
        CHECK(s.points[0].itinerary == std::vector<std::string>{"c", "k", "h", "c"});
        CHECK(s.display == std::vector<std::string>{"[c* d]", "k [i k*] j", "e a d [h* l] a", "l [c* d] f"});
    }
    CHECK(seen);

    const auto orbits = separatrix_orbits(sd);
    CHECK(orbits.size() == 4);
    std::map<std::size_t, int> per_curve;
    for (const auto& o : orbits) {
        CHECK(o.length == 3);
        ++per_curve[o.curve];
    }
    CHECK(per_curve == std::map<std::size_t, int>{{0, 2}, {1, 2}});
}

TEST_CASE("side dynamics of the identity is degenerate") {
    const auto sd = side_dynamics(identity_morphism(tau()));
    for (const auto& s : sd.sides_report) {
        CHECK(s.period == 1);
        CHECK(s.degenerate);
        CHECK(s.periodic_points == 0);
    }
    CHECK_FALSE(sd.single_periodic_point());
    CHECK_FALSE(sd.warnings.empty());
    const auto orbits = separatrix_orbits(sd);
    CHECK(orbits.size() == 12);
    for (const auto& o : orbits)
        CHECK(o.length == 1);
}

TEST_CASE("certificates") {
    const auto c1 = certify(phi1_map());
    CHECK(c1.verdict == Verdict::Reducible);
    CHECK(c1.fixed_point_free);
    CHECK(c1.invariant_subgraph.size() == 9);

    const auto c2 = certify(phi2_map());
    CHECK(c2.verdict == Verdict::PseudoAnosov);
    CHECK(c2.orientable);
    CHECK(c2.singularity_type == std::vector<int>{6, 6});
    CHECK(c2.fixed_point_free);
    CHECK(c2.single_boundary_periodic_point);
    CHECK(c2.closed_reading.find("2 fixed singularities (6-prong, 6-prong) of positive index") != std::string::npos);
    REQUIRE(c2.dilatation.has_value());

    for (int n = 1; n <= 5; ++n) {
        const auto c = certify(phi(2 * n + 1));
        CHECK(c.verdict == Verdict::PseudoAnosov);
        CHECK(c.fixed_point_free);
        CHECK(c.singularity_type == std::vector<int>{6, 6});
        for (const auto& o : c.separatrix_orbits)
            CHECK(o.length > 1);
    }
    for (int n = 1; n <= 3; ++n) {
        const auto c = certify(psi(n));
        CHECK(c.verdict == Verdict::PseudoAnosov);
        CHECK(c.fixed_point_free);
    }

    const auto ci = certify(identity_morphism(tau()));
    CHECK(ci.verdict == Verdict::Inconclusive);
    CHECK_FALSE(ci.fixed_point_free);
}

TEST_CASE("certificate serialization") {
    const auto c = certify(phi2_map());
    const auto text = certificate_text(c);
    CHECK(text.find("verdict: pA") != std::string::npos);
    const auto json = certificate_json(c);
    CHECK(json.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json.find("\"verdict\": \"pA\"") != std::string::npos);
    CHECK(json.find("37/44") != std::string::npos);
    CHECK(certificate_json(c) == json);
}
