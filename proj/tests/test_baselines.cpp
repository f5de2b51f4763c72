#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rumor/baselines.hpp"
#include "rumor/generators.hpp"
#include "rumor/likelihood.hpp"

#include "fixtures.hpp"

using namespace rumor;

namespace {

double score_of(const CentralityScores& scores, NodeId v) {
    for (const auto& [node, s] : scores)
        if (node == v) return s;
    FAIL("node not scored");
    return 0.0;
}

} // namespace

TEST_CASE("rumor_centrality_tree hand values") {
    SECTION("star of four") {
        auto g = gen_star(3, 1);
        auto scores = rumor_centrality_tree(g, RumorSnapshot({0, 1, 2, 3}, 1.0));
        REQUIRE_THAT(std::exp(score_of(scores, 0)), Catch::Matchers::WithinRel(6.0, 1e-10));
        for (NodeId leaf : {1, 2, 3})
            REQUIRE_THAT(std::exp(score_of(scores, leaf)), Catch::Matchers::WithinRel(2.0, 1e-10));
    }
    SECTION("path of three") {
        auto g = gen_line(3);
        auto scores = rumor_centrality_tree(g, RumorSnapshot({0, 1, 2}, 1.0));
        REQUIRE_THAT(std::exp(score_of(scores, 1)), Catch::Matchers::WithinRel(2.0, 1e-10));
        REQUIRE_THAT(std::exp(score_of(scores, 0)), Catch::Matchers::WithinRel(1.0, 1e-10));
    }
    SECTION("single node") {
        auto g = gen_line(2);
        auto scores = rumor_centrality_tree(g, RumorSnapshot({0}, 1.0));
        REQUIRE_THAT(std::exp(score_of(scores, 0)), Catch::Matchers::WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("rumor centrality matches the brute-force ordering count") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        int n = 2 + static_cast<int>(seed % 6);  // up to 7 nodes
        auto g = gen_random_tree(n, seed);
        std::vector<NodeId> all(static_cast<size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        RumorSnapshot snap(all, 1.0);
        auto scores = rumor_centrality_tree(g, snap);
        for (NodeId v = 0; v < n; ++v) {
            long long count = fixtures::connected_prefix_orderings(g, all, v);
            REQUIRE_THAT(std::exp(score_of(scores, v)),
                         Catch::Matchers::WithinRel(static_cast<double>(count), 1e-9));
        }
    }
}

TEST_CASE("adjacent rumor-centrality ratios match subtree splits") {
    auto g = gen_random_tree(10, 5);
    std::vector<NodeId> all(10);
    std::iota(all.begin(), all.end(), 0);
    RumorSnapshot snap(all, 1.0);
    auto scores = rumor_centrality_tree(g, snap);
    auto sizes = subtree_sizes(g, snap);
    for (NodeId u = 0; u < 10; ++u)
        for (NodeId v : g.neighbors(u)) {
            double got = std::exp(score_of(scores, u) - score_of(scores, v));
            REQUIRE_THAT(got, Catch::Matchers::WithinRel(regular_ratio(sizes, u, v, 10), 1e-9));
        }
}

TEST_CASE("rumor_centrality_bfs") {
    SECTION("reduces to the exact version on trees") {
        auto g = gen_random_tree(8, 11);
        std::vector<NodeId> all(8);
        std::iota(all.begin(), all.end(), 0);
        RumorSnapshot snap(all, 1.0);
        auto exact = rumor_centrality_tree(g, snap);
        auto heur = rumor_centrality_bfs(g, snap);
        for (size_t i = 0; i < exact.size(); ++i) {
            REQUIRE(exact[i].first == heur[i].first);
            REQUIRE_THAT(heur[i].second, Catch::Matchers::WithinAbs(exact[i].second, 1e-9));
        }
    }
    SECTION("symmetric cycles score evenly") {
        auto tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
        auto s3 = rumor_centrality_bfs(tri, RumorSnapshot({0, 1, 2}, 1.0));
        REQUIRE(s3[0].second == s3[1].second);
        REQUIRE(s3[1].second == s3[2].second);
        auto sq = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
        auto s4 = rumor_centrality_bfs(sq, RumorSnapshot({0, 1, 2, 3}, 1.0));
        for (size_t i = 1; i < 4; ++i) REQUIRE(s4[i].second == s4[0].second);
    }
}

TEST_CASE("jordan_center") {
    SECTION("path of three") {
        auto g = gen_line(3);
        auto s = jordan_center(g, RumorSnapshot({0, 1, 2}, 1.0));
        REQUIRE(score_of(s, 1) == -1.0);
        REQUIRE(score_of(s, 0) == -2.0);
    }
    SECTION("path of four ties in the middle") {
        auto g = gen_line(4);
        auto s = jordan_center(g, RumorSnapshot({0, 1, 2, 3}, 1.0));
        REQUIRE(score_of(s, 1) == score_of(s, 2));
        REQUIRE(score_of(s, 1) > score_of(s, 0));
    }
    SECTION("core tree fixture: the two interior nodes tie") {
        auto g = fixtures::core_tree_graph();
        auto s = jordan_center(g, fixtures::core_tree_snapshot(1.0));
        REQUIRE(score_of(s, 1) == -2.0);
        REQUIRE(score_of(s, 2) == -2.0);
        REQUIRE(score_of(s, 3) == -3.0);
        REQUIRE(score_of(s, 5) == -3.0);
    }
}

TEST_CASE("distance_center") {
    SECTION("path of five") {
        auto g = gen_line(5);
        std::vector<NodeId> all{0, 1, 2, 3, 4};
        auto s = distance_center(g, RumorSnapshot(all, 1.0));
        for (NodeId v : {0, 1, 3, 4}) REQUIRE(score_of(s, 2) > score_of(s, v));
    }
    SECTION("star center") {
        auto g = gen_star(4, 1);
        auto s = distance_center(g, RumorSnapshot({0, 1, 2, 3, 4}, 1.0));
        for (NodeId v : {1, 2, 3, 4}) REQUIRE(score_of(s, 0) > score_of(s, v));
    }
    SECTION("core tree fixture: the two interior nodes tie") {
        auto g = fixtures::core_tree_graph();
        auto s = distance_center(g, fixtures::core_tree_snapshot(1.0));
        REQUIRE(score_of(s, 1) == -4.0);
        REQUIRE(score_of(s, 2) == -4.0);
        REQUIRE(score_of(s, 3) == -6.0);
        REQUIRE(score_of(s, 5) == -6.0);
    }
}

TEST_CASE("baselines are permutation-equivariant") {
    auto g = fixtures::core_tree_graph();
    auto snap = fixtures::core_tree_snapshot(1.0);
    std::vector<NodeId> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(3);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto pg = fixtures::permute_graph(g, perm);
    std::vector<NodeId> pinf;
    for (NodeId v : snap.infected) pinf.push_back(perm[static_cast<size_t>(v)]);
    RumorSnapshot psnap(pinf, 1.0);

    auto check = [&](auto fn) {
        auto base = fn(g, snap);
        auto mapped = fn(pg, psnap);
        for (const auto& [node, score] : base) {
            double pscore = score_of(mapped, perm[static_cast<size_t>(node)]);
            REQUIRE_THAT(pscore, Catch::Matchers::WithinAbs(score, 1e-10));
        }
    };
    check([](const Graph& gg, const RumorSnapshot& ss) { return rumor_centrality_tree(gg, ss); });
    check([](const Graph& gg, const RumorSnapshot& ss) { return jordan_center(gg, ss); });
    check([](const Graph& gg, const RumorSnapshot& ss) { return distance_center(gg, ss); });
}
