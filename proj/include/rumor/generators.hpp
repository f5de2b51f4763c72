#ifndef RUMOR_GENERATORS_HPP
#define RUMOR_GENERATORS_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"
#include "rumor/si_sim.hpp"

namespace rumor {

inline Graph gen_er(int n, double p, uint64_t seed) {
    if (n < 1 || p < 0.0 || p > 1.0)
        throw input_error("gen_er: need n >= 1 and p in [0,1]");
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.next_unit() <= p) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

// Uniform labeled tree: draw a random Pruefer sequence and decode it.
inline Graph gen_random_tree(int n, uint64_t seed) {
    if (n < 1)
        throw input_error("gen_random_tree: need n >= 1");
    if (n == 1) return Graph::from_edges(1, {});
    if (n == 2) return Graph::from_edges(2, {{0, 1}});
    Rng rng(seed);
    std::vector<int> pruefer(static_cast<size_t>(n) - 2);
    for (int& x : pruefer) x = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));

    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int x : pruefer) ++degree[static_cast<size_t>(x)];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[static_cast<size_t>(i)] == 1) leaves.push(i);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int x : pruefer) {
        int leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, x);
        if (--degree[static_cast<size_t>(x)] == 1) leaves.push(x);
    }
    int u = leaves.top();
    leaves.pop();
    int v = leaves.top();
    edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline Graph gen_line(int n) {
    if (n < 1)
        throw input_error("gen_line: need n >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

// Node 0 is the center; arm a occupies nodes a*arm_len+1 .. (a+1)*arm_len.
inline Graph gen_star(int arms, int arm_len) {
    if (arms < 1 || arm_len < 1)
        throw input_error("gen_star: need arms >= 1 and arm_len >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int a = 0; a < arms; ++a) {
        NodeId prev = 0;
        for (int j = 0; j < arm_len; ++j) {
            NodeId node = a * arm_len + j + 1;
            edges.emplace_back(prev, node);
            prev = node;
        }
    }
    return Graph::from_edges(arms * arm_len + 1, edges);
}

inline Graph gen_grid(int w, int h) {
    if (w < 1 || h < 1)
        throw input_error("gen_grid: need w >= 1 and h >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto id = [&](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
        }
    return Graph::from_edges(w * h, edges);
}

} // namespace rumor

#endif
