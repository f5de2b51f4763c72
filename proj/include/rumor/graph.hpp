#ifndef RUMOR_GRAPH_HPP
#define RUMOR_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

using NodeId = int;

// Immutable undirected simple graph with dense ids in [0, node_count).
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edges) {
        Graph g;
        g.adj_.assign(static_cast<size_t>(node_count), {});
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= node_count || v >= node_count)
                throw input_error("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
            if (u == v)
                throw input_error("self-loop rejected at node " + std::to_string(u));
            g.adj_[static_cast<size_t>(u)].push_back(v);
            g.adj_[static_cast<size_t>(v)].push_back(u);
        }
        for (auto& nbrs : g.adj_) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        }
        return g;
    }

    int node_count() const { return static_cast<int>(adj_.size()); }
    int degree(NodeId v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[static_cast<size_t>(v)]; }

    long long edge_count() const {
        long long twice = 0;
        for (const auto& nbrs : adj_) twice += static_cast<long long>(nbrs.size());
        return twice / 2;
    }

    bool has_edge(NodeId u, NodeId v) const {
        const auto& nbrs = adj_[static_cast<size_t>(u)];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

private:
    std::vector<std::vector<NodeId>> adj_;
};

// Edge list loaded from text, with the original labels kept so results can be
// reported in the caller's id space.  Labels are remapped to dense ids sorted
// ascending; a `# nodes N` header fixes node_count and forces identity labels.
struct LoadedGraph {
    Graph graph;
    std::vector<long long> labels;                   // dense id -> original label
    std::unordered_map<long long, NodeId> index;     // original label -> dense id

    NodeId require(long long label) const {
        auto it = index.find(label);
        if (it == index.end())
            throw input_error("unknown node label " + std::to_string(label));
        return it->second;
    }
};

namespace detail {

inline bool parse_ll(const std::string& tok, long long& out) {
    size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

} // namespace detail

// Lines of whitespace-separated integer pairs; '#' lines are comments except
// an optional `# nodes N` header.  Extra trailing tokens per line (weights,
// timestamps) are ignored.  Duplicate and reversed edges are deduplicated.
inline LoadedGraph load_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> raw_edges;
    std::optional<long long> declared_nodes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            std::istringstream hs(line.substr(start + 1));
            std::string kw;
            long long n;
            if (hs >> kw >> n && kw == "nodes") declared_nodes = n;
            continue;
        }
        std::istringstream ls(line);
        std::string tu, tv;
        if (!(ls >> tu >> tv))
            throw input_error("line " + std::to_string(line_no) + ": expected two node ids");
        long long u, v;
        if (!detail::parse_ll(tu, u) || !detail::parse_ll(tv, v))
            throw input_error("line " + std::to_string(line_no) + ": malformed token");
        if (u == v)
            throw input_error("line " + std::to_string(line_no) + ": self-loop on node " + std::to_string(u));
        raw_edges.emplace_back(u, v);
    }

    LoadedGraph lg;
    if (declared_nodes) {
        if (*declared_nodes < 0)
            throw input_error("negative node count in header");
        lg.labels.resize(static_cast<size_t>(*declared_nodes));
        for (long long i = 0; i < *declared_nodes; ++i) {
            lg.labels[static_cast<size_t>(i)] = i;
            lg.index[i] = static_cast<NodeId>(i);
        }
        for (auto [u, v] : raw_edges)
            if (u < 0 || u >= *declared_nodes || v < 0 || v >= *declared_nodes)
                throw input_error("edge endpoint outside declared node range");
    } else {
        for (auto [u, v] : raw_edges) {
            lg.labels.push_back(u);
            lg.labels.push_back(v);
        }
        std::sort(lg.labels.begin(), lg.labels.end());
        lg.labels.erase(std::unique(lg.labels.begin(), lg.labels.end()), lg.labels.end());
        for (size_t i = 0; i < lg.labels.size(); ++i)
            lg.index[lg.labels[i]] = static_cast<NodeId>(i);
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw_edges.size());
    for (auto [u, v] : raw_edges)
        edges.emplace_back(lg.index.at(u), lg.index.at(v));
    lg.graph = Graph::from_edges(static_cast<int>(lg.labels.size()), edges);
    return lg;
}

// Infected node set observed at a given time.  The induced subgraph G_N must
// be connected; validate() enforces it.
struct RumorSnapshot {
    std::vector<NodeId> infected;  // sorted ascending, unique
    double observed_time = 0.0;

    RumorSnapshot() = default;
    RumorSnapshot(std::vector<NodeId> nodes, double t) : infected(std::move(nodes)), observed_time(t) {
        std::sort(infected.begin(), infected.end());
        infected.erase(std::unique(infected.begin(), infected.end()), infected.end());
    }

    int size() const { return static_cast<int>(infected.size()); }

    bool is_infected(NodeId v) const {
        return std::binary_search(infected.begin(), infected.end(), v);
    }

    std::vector<char> mask(const Graph& g) const {
        std::vector<char> m(static_cast<size_t>(g.node_count()), 0);
        for (NodeId v : infected) {
            if (v < 0 || v >= g.node_count())
                throw input_error("infected node " + std::to_string(v) + " not in graph");
            m[static_cast<size_t>(v)] = 1;
        }
        return m;
    }

    void validate(const Graph& g) const {
        if (infected.empty())
            throw input_error("snapshot has no infected nodes");
        if (!(observed_time > 0.0))
            throw input_error("observed_time must be positive");
        auto m = mask(g);
        // connectivity of the induced subgraph
        std::vector<char> seen(static_cast<size_t>(g.node_count()), 0);
        std::deque<NodeId> queue{infected.front()};
        seen[static_cast<size_t>(infected.front())] = 1;
        int reached = 0;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            ++reached;
            for (NodeId w : g.neighbors(u))
                if (m[static_cast<size_t>(w)] && !seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    queue.push_back(w);
                }
        }
        if (reached != size())
            throw input_error("infected set does not induce a connected subgraph");
    }
};

// `# t=<float>` header carries the observation time; one node id per line.
inline RumorSnapshot load_infected_set(std::istream& in, const LoadedGraph& lg) {
    std::vector<NodeId> nodes;
    double t = 0.0;
    bool have_t = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            size_t eq = line.find("t=", start);
            if (eq != std::string::npos) {
                try {
                    t = std::stod(line.substr(eq + 2));
                    have_t = true;
                } catch (...) {
                    throw input_error("line " + std::to_string(line_no) + ": malformed t= header");
                }
            }
            continue;
        }
        long long label;
        if (!detail::parse_ll(line.substr(start, line.find_last_not_of(" \t\r") - start + 1), label))
            throw input_error("line " + std::to_string(line_no) + ": malformed node id");
        nodes.push_back(lg.require(label));
    }
    if (!have_t)
        throw input_error("infected-set file missing `# t=<float>` header");
    return RumorSnapshot(std::move(nodes), t);
}

// Hop distances from source by BFS; optionally restricted to the subgraph
// induced by `within`.  Unreachable nodes get -1.
inline std::vector<int> bfs_distances(const Graph& g, NodeId source,
                                      const std::vector<char>* within = nullptr) {
    if (within && !(*within)[static_cast<size_t>(source)])
        throw input_error("bfs source not in restriction set");
    std::vector<int> dist(static_cast<size_t>(g.node_count()), -1);
    dist[static_cast<size_t>(source)] = 0;
    std::deque<NodeId> queue{source};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId w : g.neighbors(u)) {
            if (within && !(*within)[static_cast<size_t>(w)]) continue;
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Classification of the snapshot frontier: G_N-leaves, pseudo-leaves (uninfected
// nodes adjacent to an infected node that is not a G_N-leaf), per-node uninfected
// neighbor counts, and the closure (infected plus pseudo-leaves).
struct BoundaryView {
    std::vector<NodeId> gn_leaves;
    std::vector<NodeId> pseudo_leaves;
    std::vector<int> uninfected_neighbor_count;  // indexed by node id, meaningful for infected
    std::vector<NodeId> closure_nodes;           // sorted
    std::vector<int> infected_degree;            // degree within G_N, indexed by node id

    bool in_closure(NodeId v) const {
        return std::binary_search(closure_nodes.begin(), closure_nodes.end(), v);
    }
};

inline BoundaryView boundary(const Graph& g, const RumorSnapshot& snap) {
    snap.validate(g);
    auto m = snap.mask(g);
    BoundaryView bv;
    bv.uninfected_neighbor_count.assign(static_cast<size_t>(g.node_count()), 0);
    bv.infected_degree.assign(static_cast<size_t>(g.node_count()), 0);
    for (NodeId v : snap.infected) {
        int inf_deg = 0, uninf = 0;
        for (NodeId w : g.neighbors(v))
            (m[static_cast<size_t>(w)] ? inf_deg : uninf)++;
        bv.infected_degree[static_cast<size_t>(v)] = inf_deg;
        bv.uninfected_neighbor_count[static_cast<size_t>(v)] = uninf;
        if (inf_deg == 1 && snap.size() >= 2)
            bv.gn_leaves.push_back(v);
    }
    std::vector<char> is_pseudo(static_cast<size_t>(g.node_count()), 0);
    for (NodeId v : snap.infected) {
        if (bv.infected_degree[static_cast<size_t>(v)] <= 1 && snap.size() >= 2)
            continue;  // neighbors of G_N-leaves are plain boundary, not pseudo-leaves
        if (snap.size() == 1)
            continue;  // single node is a leaf of its own snapshot
        for (NodeId w : g.neighbors(v))
            if (!m[static_cast<size_t>(w)])
                is_pseudo[static_cast<size_t>(w)] = 1;
    }
    for (NodeId w = 0; w < g.node_count(); ++w)
        if (is_pseudo[static_cast<size_t>(w)])
            bv.pseudo_leaves.push_back(w);
    bv.closure_nodes = snap.infected;
    bv.closure_nodes.insert(bv.closure_nodes.end(), bv.pseudo_leaves.begin(), bv.pseudo_leaves.end());
    std::sort(bv.closure_nodes.begin(), bv.closure_nodes.end());
    return bv;
}

// Rooted view of a tree snapshot over the closure: pseudo-leaves hang off
// their (lowest-id) infected non-leaf neighbor.
struct RootedView {
    NodeId root = -1;
    std::vector<NodeId> parent;              // -1 for root / absent nodes
    std::vector<std::vector<NodeId>> children;
    std::vector<int> depth;                  // -1 for absent nodes
};

inline RootedView root_tree(const Graph& g, const RumorSnapshot& snap, NodeId root) {
    if (!snap.is_infected(root))
        throw input_error("root is not infected");
    BoundaryView bv = boundary(g, snap);
    long long gn_edges = 0;
    for (NodeId v : snap.infected)
        gn_edges += bv.infected_degree[static_cast<size_t>(v)];
    gn_edges /= 2;
    if (gn_edges != snap.size() - 1)
        throw input_error("rumor graph contains a cycle; use the starlike approximation");

    RootedView rv;
    rv.root = root;
    rv.parent.assign(static_cast<size_t>(g.node_count()), -1);
    rv.children.assign(static_cast<size_t>(g.node_count()), {});
    rv.depth.assign(static_cast<size_t>(g.node_count()), -1);
    auto m = snap.mask(g);
    rv.depth[static_cast<size_t>(root)] = 0;
    std::deque<NodeId> queue{root};
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId w : g.neighbors(u)) {
            if (!m[static_cast<size_t>(w)] || rv.depth[static_cast<size_t>(w)] >= 0) continue;
            rv.depth[static_cast<size_t>(w)] = rv.depth[static_cast<size_t>(u)] + 1;
            rv.parent[static_cast<size_t>(w)] = u;
            rv.children[static_cast<size_t>(u)].push_back(w);
            queue.push_back(w);
        }
    }
    for (NodeId p : bv.pseudo_leaves) {
        for (NodeId w : g.neighbors(p)) {  // sorted, so first match is lowest id
            if (m[static_cast<size_t>(w)] && bv.infected_degree[static_cast<size_t>(w)] > 1) {
                rv.parent[static_cast<size_t>(p)] = w;
                rv.depth[static_cast<size_t>(p)] = rv.depth[static_cast<size_t>(w)] + 1;
                rv.children[static_cast<size_t>(w)].push_back(p);
                break;
            }
        }
    }
    return rv;
}

// Directed-edge subtree sizes of the tree snapshot: size[u->v] counts the
// nodes on v's side of edge (u,v).
struct SubtreeSizes {
    int n = 0;           // infected node count N
    long long stride = 0;  // graph node count, used for edge keys
    std::unordered_map<long long, int> size;  // key = u * stride + v

    int at(NodeId u, NodeId v) const {
        auto it = size.find(static_cast<long long>(u) * stride + v);
        if (it == size.end())
            throw input_error("nodes not adjacent in the tree snapshot");
        return it->second;
    }
};

inline SubtreeSizes subtree_sizes(const Graph& g, const RumorSnapshot& snap) {
    RootedView rv = root_tree(g, snap, snap.infected.front());
    SubtreeSizes ss;
    ss.n = snap.size();
    ss.stride = g.node_count();
    // bottom-up over the rooted view (pseudo-leaves excluded)
    std::vector<NodeId> order;
    order.reserve(static_cast<size_t>(snap.size()));
    for (NodeId v : snap.infected) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return rv.depth[static_cast<size_t>(a)] > rv.depth[static_cast<size_t>(b)];
    });
    std::vector<int> down(static_cast<size_t>(g.node_count()), 1);
    const long long n = g.node_count();
    for (NodeId v : order) {
        for (NodeId c : rv.children[static_cast<size_t>(v)]) {
            if (!snap.is_infected(c)) continue;
            down[static_cast<size_t>(v)] += down[static_cast<size_t>(c)];
            ss.size[static_cast<long long>(v) * n + c] = down[static_cast<size_t>(c)];
            ss.size[static_cast<long long>(c) * n + v] = ss.n - down[static_cast<size_t>(c)];
        }
    }
    return ss;
}

} // namespace rumor

#endif
