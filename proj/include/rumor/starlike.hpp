#ifndef RUMOR_STARLIKE_HPP
#define RUMOR_STARLIKE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "rumor/baselines.hpp"
#include "rumor/errors.hpp"
#include "rumor/graph.hpp"
#include "rumor/likelihood.hpp"
#include "rumor/si_sim.hpp"

namespace rumor {

struct StarlikeArm {
    int length;        // hops from the center to the tip
    int tip_degree;    // tip degree in the underlying graph
    bool tip_infected; // false for pseudo-leaf tips
    NodeId tip;        // tip node in the original graph (for diagnostics)
};

// Per-candidate starlike reduction of the rumor closure: one arm per leaf of
// the BFS tree, plus the center's uninfected neighbors that fall outside the
// closure (pure survival factors).
struct StarlikeTree {
    NodeId center = -1;
    std::vector<StarlikeArm> arms;
    int center_extra_uninfected = 0;
};

inline StarlikeTree build_starlike(const Graph& g, const RumorSnapshot& snap, NodeId root) {
    if (!snap.is_infected(root))
        throw input_error("build_starlike: root is not infected");
    BoundaryView bv = boundary(g, snap);  // validates the snapshot

    // BFS over the closure; sorted adjacency makes the parent choice (and thus
    // the leaf set on cyclic graphs) deterministic.
    std::vector<int> depth(static_cast<size_t>(g.node_count()), -1);
    std::vector<int> bfs_children(static_cast<size_t>(g.node_count()), 0);
    std::vector<NodeId> order;
    depth[static_cast<size_t>(root)] = 0;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        order.push_back(u);
        for (NodeId w : g.neighbors(u)) {
            if (!bv.in_closure(w) || depth[static_cast<size_t>(w)] >= 0) continue;
            depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(u)] + 1;
            ++bfs_children[static_cast<size_t>(u)];
            queue.push_back(w);
        }
    }

    StarlikeTree st;
    st.center = root;
    for (NodeId u : order) {
        if (u == root || bfs_children[static_cast<size_t>(u)] > 0) continue;
        st.arms.push_back({depth[static_cast<size_t>(u)], g.degree(u), snap.is_infected(u), u});
    }
    int in_closure = 0;
    for (NodeId w : g.neighbors(root))
        if (bv.in_closure(w)) ++in_closure;
    st.center_extra_uninfected = g.degree(root) - in_closure;
    return st;
}

// Message-passing score of the starlike reduction: infected tips keep their
// graph degree; pseudo-leaf tips contribute the parent-depth term with degree
// forced to 2 (length-1 uninfected arms collapse to a survival factor).
inline LogLikelihood starlike_likelihood(const Graph& g, const RumorSnapshot& snap, NodeId root,
                                         const QuadratureConfig& q) {
    StarlikeTree st = build_starlike(g, snap, root);
    const double T = snap.observed_time;
    double sum = -T * st.center_extra_uninfected;
    for (const StarlikeArm& arm : st.arms) {
        if (arm.tip_infected)
            sum += leaf_probability({arm.length, arm.tip_degree, T}, q);
        else if (arm.length >= 2)
            sum += leaf_probability({arm.length - 1, 2, T}, q);
        else
            sum += -T;
    }
    return sum;
}

enum class Method { starlike, mp_tree, rc_bfs, jordan, distance };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::starlike: return "starlike";
        case Method::mp_tree: return "mp-tree";
        case Method::rc_bfs: return "rc-bfs";
        case Method::jordan: return "jordan";
        case Method::distance: return "distance";
    }
    return "?";
}

inline Method method_from_name(const std::string& s) {
    if (s == "starlike") return Method::starlike;
    if (s == "mp-tree") return Method::mp_tree;
    if (s == "rc-bfs") return Method::rc_bfs;
    if (s == "jordan") return Method::jordan;
    if (s == "distance") return Method::distance;
    throw input_error("unknown method '" + s + "'");
}

struct DetectionResult {
    std::vector<std::pair<NodeId, double>> ranking;  // sorted: score desc, node asc
    NodeId chosen = -1;
    std::vector<NodeId> tied;
    Method method = Method::starlike;
    uint64_t seed = 0;
};

namespace detail {

inline DetectionResult assemble_result(std::vector<std::pair<NodeId, double>> scores,
                                       Method method, uint64_t seed) {
    constexpr double kTieTol = 1e-9;
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    DetectionResult res;
    res.method = method;
    res.seed = seed;
    res.ranking = std::move(scores);
    const double best = res.ranking.front().second;
    for (const auto& [node, score] : res.ranking)
        if (score >= best - kTieTol || score == best)  // second test covers -inf
            res.tied.push_back(node);
    std::sort(res.tied.begin(), res.tied.end());
    Rng rng(seed);
    res.chosen = res.tied[rng.next_below(res.tied.size())];
    return res;
}

} // namespace detail

// Score every infected candidate with the chosen method; ties within 1e-9 are
// broken uniformly at random using `seed`.
inline DetectionResult detect_source(const Graph& g, const RumorSnapshot& snap, Method method,
                                     const QuadratureConfig& q, uint64_t seed) {
    snap.validate(g);
    std::vector<std::pair<NodeId, double>> scores;
    switch (method) {
        case Method::starlike:
            for (NodeId v : snap.infected)
                scores.emplace_back(v, starlike_likelihood(g, snap, v, q));
            break;
        case Method::mp_tree:
            for (NodeId v : snap.infected)
                scores.emplace_back(v, mp_likelihood(g, snap, v, q));
            break;
        case Method::rc_bfs:
            scores = rumor_centrality_bfs(g, snap);
            break;
        case Method::jordan:
            scores = jordan_center(g, snap);
            break;
        case Method::distance:
            scores = distance_center(g, snap);
            break;
    }
    return detail::assemble_result(std::move(scores), method, seed);
}

// Peak reading: score each candidate by the maximum of its likelihood curve
// over the horizon grid t_max * j / t_steps, j = 1..t_steps, ignoring the
// snapshot's observed time.  Only meaningful for the likelihood methods.
inline DetectionResult detect_source_peak(const Graph& g, const RumorSnapshot& snap, Method method,
                                          const QuadratureConfig& q, uint64_t seed, double t_max,
                                          int t_steps) {
    if (method != Method::starlike && method != Method::mp_tree)
        throw input_error("detect_source_peak: peak reading applies to likelihood methods only");
    if (!(t_max > 0.0) || t_steps < 1)
        throw input_error("detect_source_peak: need t_max > 0 and t_steps >= 1");
    snap.validate(g);
    std::vector<std::pair<NodeId, double>> scores;
    for (NodeId v : snap.infected) {
        double best = -std::numeric_limits<double>::infinity();
        for (int j = 1; j <= t_steps; ++j) {
            RumorSnapshot at = snap;
            at.observed_time = t_max * j / t_steps;
            double s = method == Method::starlike ? starlike_likelihood(g, at, v, q)
                                                  : mp_likelihood(g, at, v, q);
            best = std::max(best, s);
        }
        scores.emplace_back(v, best);
    }
    return detail::assemble_result(std::move(scores), method, seed);
}

} // namespace rumor

#endif
