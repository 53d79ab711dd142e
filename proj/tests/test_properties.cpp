#include <doctest.h>

#include <random>

#include "ttlab/atlas.hpp"
#include "ttlab/certifier.hpp"
#include "ttlab/errors.hpp"

using namespace ttlab;

namespace {

SplitMove pick(const TrainTrack& t, std::mt19937& rng) {
    const auto moves = legal_splits(t);
    return moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
}

} // namespace

TEST_CASE("legal splits preserve the track invariants") {
    std::mt19937 rng(20240611);
    const auto& base = tau();
    const auto ed0 = euler_data(base);
    const auto type0 = singularity_type(base);
    int checked = 0;
    while (checked < 200) {
        TrainTrack cur = base;
        const int steps = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int s = 0; s < steps && checked < 200; ++s, ++checked) {
            const auto mv = pick(cur, rng);
            const auto r = apply_split(cur, mv);
            INFO(format_move(mv));
            CHECK(validate(r.track).valid());
            const auto ed = euler_data(r.track);
            CHECK(ed.edges == ed0.edges);
            CHECK(ed.vertices == ed0.vertices);
            CHECK(ed.boundaries == ed0.boundaries);
            CHECK(singularity_type(r.track) == type0);
            const auto o = orientation(r.track);
            REQUIRE(o.orientable());
            CHECK(o.assignment->agrees_with_labels());
            CHECK(check_morphism(r.morphism).valid());
            cur = r.track;
        }
    }
}

TEST_CASE("incidence matrices are functorial along split compositions") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        TrainTrack cur = trial % 2 ? tau() : tau_prime();
        const TrainTrack seed = cur;
        const int steps = std::uniform_int_distribution<int>(2, 8)(rng);
        SplitSequence seq;
        IncidenceMatrix product;
        for (int s = 0; s < steps; ++s) {
            const auto mv = pick(cur, rng);
            seq.push_back(mv);
            const auto r = apply_split(cur, mv);
            const auto M = transition_matrix(r.morphism);
            // Composite is older o newer, so the newer matrix multiplies on the left.
            product = s == 0 ? M : multiply(M, product);
            cur = r.track;
        }
        const auto composite = apply_sequence(seed, seq);
        CHECK(transition_matrix(composite.morphism) == product);
        CHECK(check_morphism(composite.morphism).valid());
        CHECK(singularity_type(composite.track) == singularity_type(seed));
    }
}

TEST_CASE("fixed edges are exactly the positive diagonal entries") {
    std::vector<TrackMorphism> maps{phi1_map(), phi2_map(), phi3_map(), involution_map(), identity_morphism(tau())};
    for (int n = 2; n <= 5; ++n)
        maps.push_back(phi(2 * n + 1));
    for (int n = 1; n <= 5; ++n)
        maps.push_back(psi(n));
    for (const auto& m : maps) {
        const auto M = incidence_matrix(m);
        std::vector<std::string> diag;
        for (std::size_t e = 0; e < M.size(); ++e)
            if (M(e, e) > 0)
                diag.push_back(M.labels[e]);
        INFO(m.name);
        CHECK(fixed_edge_points(m) == diag);
    }
}

TEST_CASE("odd family matrices grow monotonically") {
    IncidenceMatrix prev = incidence_matrix(phi(3));
    const auto k = static_cast<std::size_t>(tau().alphabet().index("k"));
    const auto a = static_cast<std::size_t>(tau().alphabet().index("a"));
    const auto e = static_cast<std::size_t>(tau().alphabet().index("e"));
    CHECK(prev(k, a) == 2);
    CHECK(prev(k, e) == 2);
    for (int n = 2; n <= 5; ++n) {
        const auto M = incidence_matrix(phi(2 * n + 1));
        for (std::size_t r = 0; r < M.size(); ++r)
            for (std::size_t c = 0; c < M.size(); ++c)
                CHECK(M(r, c) >= prev(r, c));
        CHECK(M(k, a) == 2 * n);
        CHECK(M(k, e) == 2 * n);
        prev = M;
    }
}

TEST_CASE("boundary data survive certification of split composites") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        TrainTrack cur = tau();
        for (int s = 0; s < 5; ++s)
            cur = apply_split(cur, pick(cur, rng)).track;
        CHECK(cusp_count(cur) == cusp_count(tau()));
    }
}
