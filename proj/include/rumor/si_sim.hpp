#ifndef RUMOR_SI_SIM_HPP
#define RUMOR_SI_SIM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/graph.hpp"

namespace rumor {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic sub-seed for trial `index` of a run keyed by `master`, stable
// under any parallel execution order.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// Small splitmix-driven generator; enough statistical quality for edge delays
// and tie-breaking, and fully portable across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // uniform in (0,1]
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double next_exp(double rate) { return -std::log(next_unit()) / rate; }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

private:
    uint64_t state_;
};

struct SpreadConfig {
    double rate = 1.0;  // lambda
    uint64_t seed = 0;
};

struct SpreadOutcome {
    std::vector<double> infection_time;  // -1 for never infected
    double elapsed = 0.0;
    NodeId source = -1;
};

namespace detail {

struct SpreadEvent {
    double time;
    NodeId target;
    bool operator>(const SpreadEvent& o) const {
        return time != o.time ? time > o.time : target > o.target;
    }
};

// First-reaction SI dynamics: when a node becomes infected, each edge to a
// neighbor gets an independent Exp(rate) tentative firing time; stale events
// (target already infected) are skipped.  Stops when `max_n` nodes are
// infected or when the next event would pass `max_t`, whichever comes first.
inline SpreadOutcome spread(const Graph& g, NodeId source, long long max_n, double max_t,
                            const SpreadConfig& cfg) {
    if (source < 0 || source >= g.node_count())
        throw input_error("spread: source out of range");
    if (!(cfg.rate > 0.0))
        throw input_error("spread: rate must be positive");
    Rng rng(cfg.seed);
    SpreadOutcome out;
    out.source = source;
    out.infection_time.assign(static_cast<size_t>(g.node_count()), -1.0);
    std::priority_queue<SpreadEvent, std::vector<SpreadEvent>, std::greater<SpreadEvent>> queue;

    auto infect = [&](NodeId v, double t) {
        out.infection_time[static_cast<size_t>(v)] = t;
        out.elapsed = t;
        for (NodeId w : g.neighbors(v))
            if (out.infection_time[static_cast<size_t>(w)] < 0.0)
                queue.push({t + rng.next_exp(cfg.rate), w});
    };

    infect(source, 0.0);
    long long infected = 1;
    while (infected < max_n && !queue.empty()) {
        SpreadEvent ev = queue.top();
        queue.pop();
        if (out.infection_time[static_cast<size_t>(ev.target)] >= 0.0) continue;
        if (ev.time > max_t) break;
        infect(ev.target, ev.time);
        ++infected;
    }
    return out;
}

inline RumorSnapshot snapshot_of(const SpreadOutcome& out, double observed_time) {
    std::vector<NodeId> nodes;
    for (size_t v = 0; v < out.infection_time.size(); ++v)
        if (out.infection_time[v] >= 0.0)
            nodes.push_back(static_cast<NodeId>(v));
    return RumorSnapshot(std::move(nodes), observed_time);
}

} // namespace detail

// Run until exactly n nodes are infected; observed_time is the n-th infection
// time.  Errors out when the source's component has fewer than n nodes.
inline std::pair<RumorSnapshot, SpreadOutcome> spread_until_n(const Graph& g, NodeId source, int n,
                                                              const SpreadConfig& cfg) {
    if (n < 1)
        throw input_error("spread_until_n: n must be >= 1");
    SpreadOutcome out =
        detail::spread(g, source, n, std::numeric_limits<double>::infinity(), cfg);
    RumorSnapshot snap = detail::snapshot_of(out, out.elapsed);
    if (snap.size() < n)
        throw input_error("spread_until_n: component of source has only " +
                          std::to_string(snap.size()) + " nodes, need " + std::to_string(n));
    if (n == 1) snap.observed_time = 0.0;
    return {std::move(snap), std::move(out)};
}

inline std::pair<RumorSnapshot, SpreadOutcome> spread_until_t(const Graph& g, NodeId source,
                                                              double t, const SpreadConfig& cfg) {
    if (!(t > 0.0))
        throw input_error("spread_until_t: t must be positive");
    SpreadOutcome out = detail::spread(g, source, g.node_count(), t, cfg);
    return {detail::snapshot_of(out, t), std::move(out)};
}

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long long hits = 0;
    long long samples = 0;
};

// Brute-force likelihood: fraction of fixed-horizon runs from `candidate`
// whose infected set reproduces the snapshot exactly.
inline MonteCarloEstimate monte_carlo_likelihood(const Graph& g, const RumorSnapshot& snap,
                                                 NodeId candidate, long long samples,
                                                 const SpreadConfig& cfg) {
    if (!snap.is_infected(candidate))
        throw input_error("monte_carlo_likelihood: candidate must be infected");
    if (samples < 1)
        throw input_error("monte_carlo_likelihood: samples must be >= 1");
    auto target = snap.mask(g);
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        SpreadConfig trial = cfg;
        trial.seed = derive_seed(cfg.seed, static_cast<uint64_t>(i));
        SpreadOutcome out =
            detail::spread(g, candidate, g.node_count(), snap.observed_time, trial);
        bool match = true;
        for (size_t v = 0; v < target.size() && match; ++v)
            match = (out.infection_time[v] >= 0.0) == static_cast<bool>(target[v]);
        if (match) ++hits;
    }
    MonteCarloEstimate mc;
    mc.hits = hits;
    mc.samples = samples;
    mc.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    mc.std_error = std::sqrt(std::max(mc.estimate * (1.0 - mc.estimate), 0.0) /
                             static_cast<double>(samples));
    return mc;
}

} // namespace rumor

#endif
