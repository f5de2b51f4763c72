#ifndef RUMOR_LIKELIHOOD_HPP
#define RUMOR_LIKELIHOOD_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"
#include "rumor/quadrature.hpp"
#include "rumor/special_functions.hpp"

namespace rumor {

// All likelihoods live in the natural-log domain; -inf encodes exact zero.
using LogLikelihood = double;

// One frontier term: the probability that a node K hops from the candidate
// root, with degree d in the underlying graph, is infected by the horizon T
// while its d-1 remaining neighbors are not.
struct LeafProbTerm {
    int hops;       // K: path length from the root
    int degree;     // d: degree in the underlying graph G
    double horizon; // T
};

inline LogLikelihood leaf_probability(const LeafProbTerm& term, const QuadratureConfig& q) {
    if (term.hops < 1 || term.degree < 1 || !(term.horizon > 0.0))
        throw input_error("leaf_probability: hops >= 1, degree >= 1, horizon > 0 required");
    const int K = term.hops;
    const int d = term.degree;
    const double T = term.horizon;
    double result;
    if (d == 1) {
        // no neighbors left to stay healthy: plain Erlang CDF
        result = log_lower_incomplete_gamma(static_cast<double>(K), T) -
                 std::lgamma(static_cast<double>(K));
    } else {
        result = log_integrate_exp(
            [&](double t) { return erlang_log_pdf(K, t) - (T - t) * (d - 1); }, 0.0, T, q);
    }
    if (std::isnan(result) || result == std::numeric_limits<double>::infinity())
        throw numerical_error("leaf_probability: quadrature returned non-finite value (K=" +
                              std::to_string(K) + ", d=" + std::to_string(d) +
                              ", T=" + std::to_string(T) + ")");
    return result;
}

// Message-passing likelihood approximation for tree snapshots: the product of
// frontier terms.  Each G_N-leaf contributes its own term; each edge from an
// internal infected node to an uninfected neighbor contributes a term with the
// degree forced to 2; the root's own uninfected neighbors contribute bare
// survival factors e^{-T}.
inline LogLikelihood mp_likelihood(const Graph& g, const RumorSnapshot& snap, NodeId root,
                                   const QuadratureConfig& q) {
    RootedView rv = root_tree(g, snap, root);  // validates tree + root
    BoundaryView bv = boundary(g, snap);
    const double T = snap.observed_time;
    double sum = -T * (g.degree(root) - bv.infected_degree[static_cast<size_t>(root)]);
    for (NodeId u : snap.infected) {
        if (u == root) continue;
        const int depth = rv.depth[static_cast<size_t>(u)];
        if (bv.infected_degree[static_cast<size_t>(u)] == 1) {
            sum += leaf_probability({depth, g.degree(u), T}, q);
        } else {
            const int edges = bv.uninfected_neighbor_count[static_cast<size_t>(u)];
            if (edges > 0)
                sum += edges * leaf_probability({depth, 2, T}, q);
        }
    }
    return sum;
}

namespace detail {

struct ScaledInterp {
    ChebInterp f;       // scaled convolution kernel, max value 1 on the grid
    double log_scale = 0.0;
};

// Exact likelihood of an infected tree component by recursive convolution.
//
// Rooted at r, each non-root node u carries C_u(s) = integral_0^s e^{-x} B_u(s-x) dx
// where B_u(s) = e^{-s w_u} * prod_children C_c(s) and w_u counts u's uninfected
// neighbors; the root contributes e^{-T w_r} * prod C_c(T).  The C_u are cached
// as Chebyshev interpolants built bottom-up, with per-node log scaling so the
// tiny values never underflow.
inline double exact_tree_impl(const Graph& g, const std::vector<char>& infected, NodeId root,
                              double T, NodeId skip_a, NodeId skip_b,
                              const QuadratureConfig& q, int node_cap) {
    auto skipped = [&](NodeId a, NodeId b) {
        return (a == skip_a && b == skip_b) || (a == skip_b && b == skip_a);
    };

    const size_t n = static_cast<size_t>(g.node_count());
    std::vector<NodeId> parent(n, -1), order;
    std::vector<std::vector<NodeId>> children(n);
    std::vector<char> seen(n, 0);
    seen[static_cast<size_t>(root)] = 1;
    order.push_back(root);
    for (size_t head = 0; head < order.size(); ++head) {
        NodeId u = order[head];
        for (NodeId w : g.neighbors(u)) {
            if (!infected[static_cast<size_t>(w)] || skipped(u, w)) continue;
            if (seen[static_cast<size_t>(w)]) {
                if (w != parent[static_cast<size_t>(u)])
                    throw input_error("exact_tree_likelihood: snapshot contains a cycle");
                continue;
            }
            seen[static_cast<size_t>(w)] = 1;
            parent[static_cast<size_t>(w)] = u;
            children[static_cast<size_t>(u)].push_back(w);
            order.push_back(w);
        }
    }
    if (static_cast<int>(order.size()) > node_cap)
        throw input_error("exact_tree_likelihood: component exceeds the node cap of " +
                          std::to_string(node_cap) + "; use the starlike approximation");

    std::vector<int> w_cnt(n, 0);
    for (NodeId u : order)
        for (NodeId w : g.neighbors(u))
            if (!infected[static_cast<size_t>(w)])
                ++w_cnt[static_cast<size_t>(u)];

    const int ncheb = 64;
    auto xs = ChebInterp::nodes(T, ncheb);
    QuadratureConfig qi = q;
    qi.rel_tol = std::min(q.rel_tol, 1e-12);
    qi.abs_tol = std::min(q.abs_tol, 1e-15);

    std::vector<ScaledInterp> interp(n);
    for (size_t idx = order.size(); idx-- > 1;) {  // children first, root excluded
        NodeId u = order[idx];
        double mu = 0.0;
        for (NodeId c : children[static_cast<size_t>(u)])
            mu += interp[static_cast<size_t>(c)].log_scale;
        auto bhat = [&](double s) {
            double v = std::exp(-s * w_cnt[static_cast<size_t>(u)]);
            for (NodeId c : children[static_cast<size_t>(u)])
                v *= std::max(interp[static_cast<size_t>(c)].f(s), 0.0);
            return v;
        };
        std::vector<double> raw(static_cast<size_t>(ncheb) + 1, 0.0);
        for (int j = 1; j <= ncheb; ++j) {
            const double s = xs[static_cast<size_t>(j)];
            raw[static_cast<size_t>(j)] =
                integrate([&](double x) { return std::exp(-x) * bhat(s - x); }, 0.0, s, qi);
        }
        double mx = *std::max_element(raw.begin(), raw.end());
        if (!(mx > 0.0))
            return -std::numeric_limits<double>::infinity();
        for (double& v : raw) v /= mx;
        interp[static_cast<size_t>(u)] = {ChebInterp(T, std::move(raw)), mu + std::log(mx)};
    }

    double result = -T * w_cnt[static_cast<size_t>(root)];
    for (NodeId c : children[static_cast<size_t>(root)]) {
        const auto& si = interp[static_cast<size_t>(c)];
        double v = si.f(T);
        if (!(v > 0.0))
            return -std::numeric_limits<double>::infinity();
        result += si.log_scale + std::log(v);
    }
    return result;
}

} // namespace detail

// Ground-truth likelihood of a tree snapshot.  Capped by node count because it
// is meant as a desk-scale oracle, not a production scorer.
inline LogLikelihood exact_tree_likelihood(const Graph& g, const RumorSnapshot& snap, NodeId root,
                                           const QuadratureConfig& q, int node_cap = 12) {
    snap.validate(g);
    if (!snap.is_infected(root))
        throw input_error("exact_tree_likelihood: root is not infected");
    return detail::exact_tree_impl(g, snap.mask(g), root, snap.observed_time, -1, -1, q, node_cap);
}

// log P(G_N | u, T) for a snapshot split by bridge edge (u,v) into the side
// G1 containing u (evaluated exactly here) and the side G2 containing v
// (evaluated by the supplied callback at reduced horizons):
//   P = P(G1|u,T) * integral_0^T e^{-x} P(G2|v,T-x) dx
inline LogLikelihood bridge_convolution(const Graph& g, const RumorSnapshot& snap, NodeId u,
                                        NodeId v, const std::function<double(double)>& inner,
                                        const QuadratureConfig& q, int node_cap = 12) {
    snap.validate(g);
    if (!snap.is_infected(u) || !snap.is_infected(v) || !g.has_edge(u, v))
        throw input_error("bridge_convolution: (u,v) must be an infected edge");
    auto m = snap.mask(g);
    // bridge check: removing (u,v) must disconnect u from v within G_N
    {
        std::vector<char> seen(m.size(), 0);
        std::vector<NodeId> stack{u};
        seen[static_cast<size_t>(u)] = 1;
        while (!stack.empty()) {
            NodeId a = stack.back();
            stack.pop_back();
            for (NodeId b : g.neighbors(a)) {
                if (!m[static_cast<size_t>(b)] || seen[static_cast<size_t>(b)]) continue;
                if ((a == u && b == v) || (a == v && b == u)) continue;
                seen[static_cast<size_t>(b)] = 1;
                stack.push_back(b);
            }
        }
        if (seen[static_cast<size_t>(v)])
            throw input_error("bridge_convolution: edge (u,v) is not a bridge of the snapshot");
    }
    const double T = snap.observed_time;
    double log_p1 = detail::exact_tree_impl(g, m, u, T, u, v, q, node_cap);
    double log_conv = log_integrate_exp([&](double x) { return -x + inner(T - x); }, 0.0, T, q);
    return log_p1 + log_conv;
}

// Exact evaluator for the component of `v` after cutting bridge (u,v);
// convenient as the `inner` argument of bridge_convolution.
inline std::function<double(double)> exact_component_evaluator(const Graph& g,
                                                               const RumorSnapshot& snap, NodeId u,
                                                               NodeId v, const QuadratureConfig& q,
                                                               int node_cap = 12) {
    auto m = snap.mask(g);
    return [&g, m, u, v, q, node_cap](double horizon) {
        if (!(horizon > 0.0))
            return -std::numeric_limits<double>::infinity();
        return detail::exact_tree_impl(g, m, v, horizon, u, v, q, node_cap);
    };
}

// Closed form for an N-node tree snapshot inside a d-regular underlying tree:
//   P = k_const * e^{-(N(d-2)+2)T} * (e^{(d-2)T} - 1)^{N-1}
inline LogLikelihood regular_tree_closed_form(int n, int d, double k_const, double t) {
    if (n < 1 || d < 3 || !(k_const > 0.0) || !(t > 0.0))
        throw input_error("regular_tree_closed_form: need n >= 1, d >= 3, k > 0, t > 0");
    return std::log(k_const) - (static_cast<double>(n) * (d - 2) + 2.0) * t +
           (n - 1) * std::log(std::expm1((d - 2) * t));
}

// Time-independent likelihood ratio P(u)/P(v) for adjacent u,v in a regular
// tree snapshot: |subtree on u's side of the edge| / (N - same).
inline double regular_ratio(const SubtreeSizes& sizes, NodeId u, NodeId v, int n) {
    const int s = sizes.at(v, u);  // nodes on u's side when looking from v
    return static_cast<double>(s) / static_cast<double>(n - s);
}

// Line snapshot with both ends bordered by one uninfected node each; candidate
// at position i (1-based): P = T^{i-1}e^{-T}/(i-1)! * T^{n-i}e^{-T}/(n-i)!
inline LogLikelihood line_likelihood(int n, int i, double t) {
    if (n < 1 || i < 1 || i > n || !(t > 0.0))
        throw input_error("line_likelihood: need 1 <= i <= n, t > 0");
    return (i - 1) * std::log(t) - t - std::lgamma(static_cast<double>(i)) +
           (n - i) * std::log(t) - t - std::lgamma(static_cast<double>(n - i + 1));
}

// True likelihood of a center-adjacent arm node in the symmetric starlike tree
// (d arms of k infected nodes, every tip bordered by one uninfected node):
//   P = k (e^{-T}/k!)^d e^{T(d-2)} T^{k-1} / (d-2)^{k(d-1)+1} * gamma(k(d-1)+1, (d-2)T)
inline LogLikelihood star_arm_true_likelihood(int arms, int arm_len, double t) {
    if (arms == 2)
        throw input_error("star_arm_true_likelihood: d=2 is a line; use line_likelihood");
    if (arms < 3 || arm_len < 1 || !(t > 0.0))
        throw input_error("star_arm_true_likelihood: need d >= 3, k >= 1, t > 0");
    const double d = arms, k = arm_len;
    const double a = k * (d - 1) + 1.0;
    return std::log(k) + d * (-t - std::lgamma(k + 1.0)) + t * (d - 2.0) +
           (k - 1.0) * std::log(t) - a * std::log(d - 2.0) +
           log_lower_incomplete_gamma(a, (d - 2.0) * t);
}

// Approximate center-over-arm likelihood ratio ((k+1)/T)^{d-2} * (k+1)/k.
inline double starlike_ratio_approx(int arms, int arm_len, double t) {
    if (arms < 2 || arm_len < 1 || !(t > 0.0))
        throw input_error("starlike_ratio_approx: need d >= 2, k >= 1, t > 0");
    const double k = arm_len;
    return std::pow((k + 1.0) / t, arms - 2) * (k + 1.0) / k;
}

} // namespace rumor

#endif
