#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rumor/generators.hpp"
#include "rumor/likelihood.hpp"
#include "rumor/si_sim.hpp"

#include "fixtures.hpp"

using namespace rumor;

TEST_CASE("spread_until_n basics") {
    auto g = gen_line(3);
    SECTION("n = 1 stops immediately") {
        auto [snap, out] = spread_until_n(g, 1, 1, {1.0, 42});
        REQUIRE(snap.infected == std::vector<NodeId>{1});
        REQUIRE(out.elapsed == 0.0);
    }
    SECTION("deterministic under a fixed seed") {
        auto a = spread_until_n(g, 0, 3, {1.0, 7});
        auto b = spread_until_n(g, 0, 3, {1.0, 7});
        REQUIRE(a.first.infected == b.first.infected);
        REQUIRE(a.second.infection_time == b.second.infection_time);
        auto c = spread_until_n(g, 0, 3, {1.0, 8});
        REQUIRE(a.second.infection_time != c.second.infection_time);
    }
    SECTION("component too small") {
        REQUIRE_THROWS_AS(spread_until_n(g, 0, 4, {1.0, 1}), input_error);
    }
    SECTION("mean time to fill the path from the middle is 1.5") {
        // max of two independent unit exponentials
        double sum = 0.0;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i)
            sum += spread_until_n(g, 1, 3, {1.0, derive_seed(99, i)}).second.elapsed;
        REQUIRE_THAT(sum / trials, Catch::Matchers::WithinAbs(1.5, 0.02));
    }
}

TEST_CASE("spread_until_t basics") {
    auto g = gen_line(3);
    SECTION("tiny horizon keeps only the source") {
        auto [snap, out] = spread_until_t(g, 2, 1e-12, {1.0, 5});
        REQUIRE(snap.infected == std::vector<NodeId>{2});
        REQUIRE(snap.observed_time == 1e-12);
    }
    SECTION("isolated source") {
        auto iso = Graph::from_edges(2, {});
        auto [snap, out] = spread_until_t(iso, 0, 100.0, {1.0, 5});
        REQUIRE(snap.infected == std::vector<NodeId>{0});
    }
}

TEST_CASE("infection times are monotone along the infection tree") {
    auto g = gen_er(40, 0.12, 2024);
    auto [snap, out] = spread_until_t(g, 0, 3.0, {1.0, 11});
    for (NodeId v : snap.infected) {
        if (v == out.source) {
            REQUIRE(out.infection_time[static_cast<size_t>(v)] == 0.0);
            continue;
        }
        double t = out.infection_time[static_cast<size_t>(v)];
        REQUIRE(t <= out.elapsed);
        bool has_earlier_neighbor = false;
        for (NodeId w : g.neighbors(v)) {
            double tw = out.infection_time[static_cast<size_t>(w)];
            if (tw >= 0.0 && tw < t) has_earlier_neighbor = true;
        }
        REQUIRE(has_earlier_neighbor);
    }
}

TEST_CASE("rate scaling: rate lambda at horizon T matches rate 1 at horizon lambda*T") {
    auto g = gen_er(30, 0.15, 77);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto fast = spread_until_t(g, 0, 1.3, {2.0, seed}).first;
        auto slow = spread_until_t(g, 0, 2.6, {1.0, seed}).first;
        REQUIRE(fast.infected == slow.infected);
    }
}

TEST_CASE("monte_carlo_likelihood") {
    const QuadratureConfig q;
    SECTION("end of a short line") {
        auto g = gen_line(4);
        RumorSnapshot snap({0, 1, 2}, 1.0);
        auto mc = monte_carlo_likelihood(g, snap, 0, 200000, {1.0, 123});
        double expected = 0.5 * std::exp(-1.0);
        REQUIRE(std::fabs(mc.estimate - expected) <= 5.0 * mc.std_error);
    }
    SECTION("tiny horizon on a single-node snapshot") {
        auto g = gen_line(3);
        RumorSnapshot snap({1}, 1e-6);
        auto mc = monte_carlo_likelihood(g, snap, 1, 2000, {1.0, 9});
        REQUIRE(mc.estimate > 0.999);
    }
    SECTION("agrees with the exact evaluation on small tree snapshots") {
        auto star = fixtures::sym_starlike(3, 1);
        for (NodeId cand : {0, 1}) {
            RumorSnapshot snap(star.infected, 1.0);
            auto mc = monte_carlo_likelihood(star.graph, snap, cand, 200000,
                                             {1.0, 1000 + static_cast<uint64_t>(cand)});
            double expected = std::exp(exact_tree_likelihood(star.graph, snap, cand, q));
            REQUIRE(std::fabs(mc.estimate - expected) <= 5.0 * mc.std_error);
        }
    }
    SECTION("candidate must be infected") {
        auto g = gen_line(3);
        REQUIRE_THROWS_AS(monte_carlo_likelihood(g, RumorSnapshot({0, 1}, 1.0), 2, 10, {1.0, 1}),
                          input_error);
    }
}
