#ifndef RUMOR_TEST_FIXTURES_HPP
#define RUMOR_TEST_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "rumor/generators.hpp"
#include "rumor/graph.hpp"

namespace fixtures {

using rumor::Graph;
using rumor::NodeId;
using rumor::RumorSnapshot;

// Fragment of a 3-regular tree: infected core {1,2,3,5}, six uninfected
// frontier nodes.  Node 1 joins 0,2,3; node 2 joins 1,4,5; node 3 joins 6,7;
// node 5 joins 8,9.  All infected nodes have degree 3.
inline Graph core_tree_graph() {
    return Graph::from_edges(10, {{1, 0}, {1, 2}, {1, 3}, {2, 4}, {2, 5},
                                  {3, 6}, {3, 7}, {5, 8}, {5, 9}});
}

inline RumorSnapshot core_tree_snapshot(double t) {
    return RumorSnapshot({1, 2, 3, 5}, t);
}

// Star embedded in a d-regular tree: center 0 with n_infected-1 infected
// neighbors; every infected node is padded with uninfected neighbors up to
// degree d.
struct RegularStar {
    Graph graph;
    NodeId center = 0;
    std::vector<NodeId> arm_nodes;
    std::vector<NodeId> infected;
};

inline RegularStar regular_star(int d, int n_infected) {
    RegularStar rs;
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId next = 1;
    for (int i = 1; i < n_infected; ++i) {
        rs.arm_nodes.push_back(next);
        edges.emplace_back(0, next);
        ++next;
    }
    NodeId pad_start = next;
    for (int i = 0; i < d - (n_infected - 1); ++i) edges.emplace_back(0, next++);
    for (NodeId arm : rs.arm_nodes)
        for (int i = 0; i < d - 1; ++i) edges.emplace_back(arm, next++);
    (void)pad_start;
    rs.graph = Graph::from_edges(next, edges);
    rs.infected.push_back(0);
    rs.infected.insert(rs.infected.end(), rs.arm_nodes.begin(), rs.arm_nodes.end());
    return rs;
}

// Symmetric starlike snapshot: d arms, k infected nodes per arm, every tip
// followed by exactly one uninfected node (so tips have degree 2).
struct SymStarlike {
    Graph graph;
    NodeId center = 0;
    NodeId first_arm_node = 1;  // adjacent to the center
    std::vector<NodeId> infected;
};

inline SymStarlike sym_starlike(int d, int k) {
    SymStarlike s;
    s.graph = rumor::gen_star(d, k + 1);
    s.infected.push_back(0);
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < k; ++j)
            s.infected.push_back(a * (k + 1) + j + 1);
    std::sort(s.infected.begin(), s.infected.end());
    return s;
}

// All-pairs shortest paths by Floyd-Warshall; -1 encodes unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int n = g.node_count();
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), inf));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
    for (int u = 0; u < n; ++u)
        for (NodeId v : g.neighbors(u)) d[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    std::min(d[static_cast<size_t>(i)][static_cast<size_t>(j)],
                             d[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                                 d[static_cast<size_t>(k)][static_cast<size_t>(j)]);
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = -1;
    return d;
}

// Number of orderings of the infected set that start at `start` and keep
// every prefix connected (brute force over permutations).
inline long long connected_prefix_orderings(const Graph& g, const std::vector<NodeId>& infected,
                                            NodeId start) {
    std::vector<NodeId> rest;
    for (NodeId v : infected)
        if (v != start) rest.push_back(v);
    std::sort(rest.begin(), rest.end());
    long long count = 0;
    do {
        std::vector<NodeId> prefix{start};
        bool ok = true;
        for (NodeId v : rest) {
            bool attached = false;
            for (NodeId u : prefix)
                if (g.has_edge(u, v)) {
                    attached = true;
                    break;
                }
            if (!attached) {
                ok = false;
                break;
            }
            prefix.push_back(v);
        }
        if (ok) ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return count;
}

// Relabel a graph by a permutation: node v becomes perm[v].
inline Graph permute_graph(const Graph& g, const std::vector<NodeId>& perm) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v)
                edges.emplace_back(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
    return Graph::from_edges(g.node_count(), edges);
}

} // namespace fixtures

#endif
