#ifndef RUMOR_BASELINES_HPP
#define RUMOR_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"

namespace rumor {

// Per-candidate scores, one entry per infected node, sorted by node id.
// Log domain for rumor centrality; negated eccentricity / distance sums for
// the center heuristics so that argmax is always "best".
using CentralityScores = std::vector<std::pair<NodeId, double>>;

// Exact rumor centrality on tree snapshots: R(v) = N! / prod_u |subtree_u^v|,
// computed once at an arbitrary root and rerooted via
// R(child)/R(parent) = s/(N-s) with s the child's subtree size.
inline CentralityScores rumor_centrality_tree(const Graph& g, const RumorSnapshot& snap) {
    const NodeId r0 = snap.infected.front();
    RootedView rv = root_tree(g, snap, r0);  // rejects cycles
    const int n = snap.size();

    std::vector<NodeId> order = snap.infected;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return rv.depth[static_cast<size_t>(a)] > rv.depth[static_cast<size_t>(b)];
    });
    std::vector<int> down(static_cast<size_t>(g.node_count()), 1);
    double log_r0 = std::lgamma(n + 1.0);
    for (NodeId v : order) {
        for (NodeId c : rv.children[static_cast<size_t>(v)])
            if (snap.is_infected(c))
                down[static_cast<size_t>(v)] += down[static_cast<size_t>(c)];
        log_r0 -= std::log(static_cast<double>(down[static_cast<size_t>(v)]));
    }

    std::vector<double> log_r(static_cast<size_t>(g.node_count()), 0.0);
    log_r[static_cast<size_t>(r0)] = log_r0;
    std::deque<NodeId> queue{r0};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId c : rv.children[static_cast<size_t>(u)]) {
            if (!snap.is_infected(c)) continue;
            log_r[static_cast<size_t>(c)] =
                log_r[static_cast<size_t>(u)] +
                std::log(static_cast<double>(down[static_cast<size_t>(c)])) -
                std::log(static_cast<double>(n - down[static_cast<size_t>(c)]));
            queue.push_back(c);
        }
    }

    CentralityScores scores;
    scores.reserve(static_cast<size_t>(n));
    for (NodeId v : snap.infected)
        scores.emplace_back(v, log_r[static_cast<size_t>(v)]);
    return scores;
}

namespace detail {

// BFS tree of the infected subgraph rooted at `root`, children discovered in
// ascending node order (adjacency lists are sorted).
inline std::vector<std::vector<NodeId>> bfs_tree_children(const Graph& g,
                                                          const std::vector<char>& mask,
                                                          NodeId root) {
    std::vector<std::vector<NodeId>> children(static_cast<size_t>(g.node_count()));
    std::vector<char> seen(static_cast<size_t>(g.node_count()), 0);
    seen[static_cast<size_t>(root)] = 1;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId w : g.neighbors(u)) {
            if (!mask[static_cast<size_t>(w)] || seen[static_cast<size_t>(w)]) continue;
            seen[static_cast<size_t>(w)] = 1;
            children[static_cast<size_t>(u)].push_back(w);
            queue.push_back(w);
        }
    }
    return children;
}

inline double log_rumor_centrality_of_root(const Graph& g,
                                           const std::vector<std::vector<NodeId>>& children,
                                           NodeId root, int n) {
    // iterative post-order subtree sizes
    std::vector<NodeId> stack{root}, order;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (NodeId c : children[static_cast<size_t>(u)]) stack.push_back(c);
    }
    std::vector<int> size(static_cast<size_t>(g.node_count()), 1);
    double result = std::lgamma(n + 1.0);
    for (size_t i = order.size(); i-- > 0;) {
        NodeId u = order[i];
        for (NodeId c : children[static_cast<size_t>(u)])
            size[static_cast<size_t>(u)] += size[static_cast<size_t>(c)];
        result -= std::log(static_cast<double>(size[static_cast<size_t>(u)]));
    }
    return result;
}

} // namespace detail

// Rumor centrality of each candidate computed on the BFS tree of G_N rooted at
// that candidate; coincides with the exact version on tree snapshots.
inline CentralityScores rumor_centrality_bfs(const Graph& g, const RumorSnapshot& snap) {
    snap.validate(g);
    auto mask = snap.mask(g);
    CentralityScores scores;
    scores.reserve(static_cast<size_t>(snap.size()));
    for (NodeId v : snap.infected) {
        auto children = detail::bfs_tree_children(g, mask, v);
        scores.emplace_back(v, detail::log_rumor_centrality_of_root(g, children, v, snap.size()));
    }
    return scores;
}

// score = -eccentricity within the infected subgraph
inline CentralityScores jordan_center(const Graph& g, const RumorSnapshot& snap) {
    snap.validate(g);
    auto mask = snap.mask(g);
    CentralityScores scores;
    for (NodeId v : snap.infected) {
        auto dist = bfs_distances(g, v, &mask);
        int ecc = 0;
        for (NodeId u : snap.infected) ecc = std::max(ecc, dist[static_cast<size_t>(u)]);
        scores.emplace_back(v, -static_cast<double>(ecc));
    }
    return scores;
}

// score = -sum of hop distances within the infected subgraph
inline CentralityScores distance_center(const Graph& g, const RumorSnapshot& snap) {
    snap.validate(g);
    auto mask = snap.mask(g);
    CentralityScores scores;
    for (NodeId v : snap.infected) {
        auto dist = bfs_distances(g, v, &mask);
        long long sum = 0;
        for (NodeId u : snap.infected) sum += dist[static_cast<size_t>(u)];
        scores.emplace_back(v, -static_cast<double>(sum));
    }
    return scores;
}

} // namespace rumor

#endif
