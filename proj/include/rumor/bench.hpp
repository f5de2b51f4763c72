#ifndef RUMOR_BENCH_HPP
#define RUMOR_BENCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/generators.hpp"
#include "rumor/graph.hpp"
#include "rumor/si_sim.hpp"
#include "rumor/starlike.hpp"

namespace rumor {

struct ExperimentConfig {
    std::string generator = "er";  // er | random_tree | line | star | grid | file
    int n = 50;
    double p = 0.04;
    int arms = 3;
    int arm_len = 1;
    int grid_w = 5;
    int grid_h = 5;
    std::string graph_file;

    std::string mode = "fixed_n";  // fixed_n | fixed_t
    std::vector<double> ratios{0.1};
    std::vector<double> horizons{1.0};
    int trials = 100;
    std::vector<Method> methods{Method::starlike, Method::rc_bfs, Method::jordan,
                                Method::distance};
    uint64_t master_seed = 1;
    double rate = 1.0;
    QuadratureConfig quadrature;

    void validate() const {
        if (trials < 1)
            throw input_error("config: trials must be >= 1");
        if (mode != "fixed_n" && mode != "fixed_t")
            throw input_error("config: mode must be fixed_n or fixed_t");
        if (mode == "fixed_n")
            for (double r : ratios)
                if (!(r > 0.0 && r <= 1.0))
                    throw input_error("config: infection ratios must lie in (0,1]");
        if (mode == "fixed_t")
            for (double t : horizons)
                if (!(t > 0.0))
                    throw input_error("config: horizons must be positive");
        if (methods.empty())
            throw input_error("config: at least one method required");
    }
};

struct MethodOutcome {
    NodeId estimate = -1;
    int hop_error = -1;
    int tie_count = 0;
};

struct TrialRecord {
    double param = 0.0;  // infection ratio or horizon, depending on mode
    int trial_index = 0;
    uint64_t seed = 0;
    NodeId true_source = -1;
    int n_infected = 0;
    long long n_edges_infected = 0;
    double elapsed_time = 0.0;
    int resamples = 0;
    std::vector<std::pair<Method, MethodOutcome>> per_method;
};

struct BenchResult {
    std::vector<TrialRecord> records;
    std::string csv;    // aggregate table
    std::string jsonl;  // one record per line
};

namespace detail {

inline Graph make_graph(const ExperimentConfig& cfg, uint64_t seed) {
    if (cfg.generator == "er") return gen_er(cfg.n, cfg.p, seed);
    if (cfg.generator == "random_tree") return gen_random_tree(cfg.n, seed);
    if (cfg.generator == "line") return gen_line(cfg.n);
    if (cfg.generator == "star") return gen_star(cfg.arms, cfg.arm_len);
    if (cfg.generator == "grid") return gen_grid(cfg.grid_w, cfg.grid_h);
    if (cfg.generator == "file") {
        std::ifstream in(cfg.graph_file);
        if (!in)
            throw input_error("config: cannot open graph file '" + cfg.graph_file + "'");
        return load_edge_list(in).graph;
    }
    throw input_error("config: unknown generator '" + cfg.generator + "'");
}

inline std::vector<int> component_sizes(const Graph& g, std::vector<int>& comp_of) {
    comp_of.assign(static_cast<size_t>(g.node_count()), -1);
    std::vector<int> sizes;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (comp_of[static_cast<size_t>(s)] >= 0) continue;
        int id = static_cast<int>(sizes.size());
        int count = 0;
        std::vector<NodeId> stack{s};
        comp_of[static_cast<size_t>(s)] = id;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            ++count;
            for (NodeId w : g.neighbors(u))
                if (comp_of[static_cast<size_t>(w)] < 0) {
                    comp_of[static_cast<size_t>(w)] = id;
                    stack.push_back(w);
                }
        }
        sizes.push_back(count);
    }
    return sizes;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, bool fixed_n, double param,
                             size_t param_idx, int trial) {
    TrialRecord rec;
    rec.param = param;
    rec.trial_index = trial;
    const uint64_t key =
        static_cast<uint64_t>(param_idx) * static_cast<uint64_t>(cfg.trials) +
        static_cast<uint64_t>(trial);
    rec.seed = derive_seed(cfg.master_seed, key);

    Graph g;
    NodeId source = -1;
    int target_n = 0;
    int attempt = 0;
    while (true) {
        uint64_t graph_seed = derive_seed(rec.seed, 4 * static_cast<uint64_t>(attempt));
        uint64_t source_seed = derive_seed(rec.seed, 4 * static_cast<uint64_t>(attempt) + 1);
        g = make_graph(cfg, graph_seed);
        target_n = fixed_n ? std::max(1, static_cast<int>(std::llround(param * g.node_count())))
                           : 0;
        std::vector<int> comp_of;
        auto sizes = component_sizes(g, comp_of);
        int biggest = *std::max_element(sizes.begin(), sizes.end());
        if (fixed_n && biggest < target_n) {
            // no component can host the requested snapshot; regenerate
            ++rec.resamples;
            ++attempt;
            if (attempt > 1000)
                throw input_error("bench: cannot reach requested infection size; "
                                  "check generator parameters");
            continue;
        }
        Rng rng(source_seed);
        source = static_cast<NodeId>(rng.next_below(static_cast<uint64_t>(g.node_count())));
        while (fixed_n && sizes[static_cast<size_t>(comp_of[static_cast<size_t>(source)])] <
                              target_n) {
            ++rec.resamples;  // source's component too small; fresh uniform source
            source = static_cast<NodeId>(rng.next_below(static_cast<uint64_t>(g.node_count())));
        }
        break;
    }

    SpreadConfig scfg;
    scfg.rate = cfg.rate;
    scfg.seed = derive_seed(rec.seed, 2);
    RumorSnapshot snap;
    if (fixed_n) {
        snap = spread_until_n(g, source, target_n, scfg).first;
        rec.elapsed_time = snap.observed_time;
    } else {
        snap = spread_until_t(g, source, param, scfg).first;
        rec.elapsed_time = param;
    }
    rec.true_source = source;
    rec.n_infected = snap.size();
    auto m = snap.mask(g);
    for (NodeId v : snap.infected)
        for (NodeId w : g.neighbors(v))
            if (m[static_cast<size_t>(w)]) ++rec.n_edges_infected;
    rec.n_edges_infected /= 2;

    auto dist_from_source = bfs_distances(g, source);
    for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        Method method = cfg.methods[mi];
        MethodOutcome out;
        if (snap.size() == 1) {
            out.estimate = snap.infected.front();
            out.tie_count = 1;
        } else {
            DetectionResult dr = detect_source(g, snap, method, cfg.quadrature,
                                               derive_seed(rec.seed, 16 + mi));
            out.estimate = dr.chosen;
            out.tie_count = static_cast<int>(dr.tied.size());
        }
        out.hop_error = dist_from_source[static_cast<size_t>(out.estimate)];
        rec.per_method.emplace_back(method, out);
    }
    return rec;
}

inline std::string format_double(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

inline std::string format_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace detail

inline BenchResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const bool fixed_n = cfg.mode == "fixed_n";
    const std::vector<double>& params = fixed_n ? cfg.ratios : cfg.horizons;

    BenchResult result;
    result.records.resize(params.size() * static_cast<size_t>(cfg.trials));
    const size_t total = result.records.size();

    // trials are independent with per-trial derived seeds, so any execution
    // order yields the same records
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, 16);
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            try {
                for (size_t i = w; i < total; i += workers) {
                    size_t param_idx = i / static_cast<size_t>(cfg.trials);
                    int trial = static_cast<int>(i % static_cast<size_t>(cfg.trials));
                    result.records[i] =
                        detail::run_trial(cfg, fixed_n, params[param_idx], param_idx, trial);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);

    // aggregates
    std::ostringstream csv;
    csv << "generator,n,param,method,accuracy,mean_hop_error,trials\n";
    for (size_t pi = 0; pi < params.size(); ++pi) {
        std::map<std::string, std::pair<long long, long long>> agg;  // method -> (hits, hop sum)
        for (int t = 0; t < cfg.trials; ++t) {
            const TrialRecord& rec = result.records[pi * static_cast<size_t>(cfg.trials) +
                                                    static_cast<size_t>(t)];
            for (const auto& [method, out] : rec.per_method) {
                auto& a = agg[method_name(method)];
                if (out.hop_error == 0) ++a.first;
                a.second += out.hop_error;
            }
        }
        for (const auto& [name, a] : agg) {
            csv << cfg.generator << ',' << cfg.n << ',' << detail::format_param(params[pi]) << ','
                << name << ',' << detail::format_double(static_cast<double>(a.first) / cfg.trials)
                << ',' << detail::format_double(static_cast<double>(a.second) / cfg.trials) << ','
                << cfg.trials << '\n';
        }
    }
    result.csv = csv.str();

    std::ostringstream jsonl;
    for (const TrialRecord& rec : result.records) {
        jsonl << "{\"param\":" << detail::format_param(rec.param)
              << ",\"trial\":" << rec.trial_index << ",\"seed\":" << rec.seed
              << ",\"true_source\":" << rec.true_source << ",\"n_infected\":" << rec.n_infected
              << ",\"n_edges_infected\":" << rec.n_edges_infected
              << ",\"elapsed_time\":" << detail::format_double(rec.elapsed_time)
              << ",\"resamples\":" << rec.resamples << ",\"methods\":{";
        for (size_t i = 0; i < rec.per_method.size(); ++i) {
            const auto& [method, out] = rec.per_method[i];
            if (i) jsonl << ',';
            jsonl << '"' << method_name(method) << "\":{\"estimate\":" << out.estimate
                  << ",\"hop_error\":" << out.hop_error << ",\"ties\":" << out.tie_count << '}';
        }
        jsonl << "}}\n";
    }
    result.jsonl = jsonl.str();
    return result;
}

// Flat key=value config files; '#' starts a comment.  Unknown keys are errors
// so typos do not silently fall back to defaults.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
    auto parse_doubles = [](const std::string& s) {
        std::vector<double> out;
        std::istringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(std::stod(tok));
        return out;
    };
    try {
        if (key == "generator") cfg.generator = value;
        else if (key == "n") cfg.n = std::stoi(value);
        else if (key == "p") cfg.p = std::stod(value);
        else if (key == "arms") cfg.arms = std::stoi(value);
        else if (key == "arm_len") cfg.arm_len = std::stoi(value);
        else if (key == "grid_w") cfg.grid_w = std::stoi(value);
        else if (key == "grid_h") cfg.grid_h = std::stoi(value);
        else if (key == "graph_file") cfg.graph_file = value;
        else if (key == "mode") cfg.mode = value;
        else if (key == "ratios") cfg.ratios = parse_doubles(value);
        else if (key == "horizons") cfg.horizons = parse_doubles(value);
        else if (key == "trials") cfg.trials = std::stoi(value);
        else if (key == "master_seed") cfg.master_seed = std::stoull(value);
        else if (key == "rate") cfg.rate = std::stod(value);
        else if (key == "abs_tol") cfg.quadrature.abs_tol = std::stod(value);
        else if (key == "rel_tol") cfg.quadrature.rel_tol = std::stod(value);
        else if (key == "max_subdivisions") cfg.quadrature.max_subdivisions = std::stoi(value);
        else if (key == "methods") {
            cfg.methods.clear();
            std::istringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) cfg.methods.push_back(method_from_name(tok));
        } else {
            throw input_error("config: unknown key '" + key + "'");
        }
    } catch (const input_error&) {
        throw;
    } catch (...) {
        throw input_error("config: malformed value for key '" + key + "'");
    }
}

inline ExperimentConfig load_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw input_error("config line " + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

} // namespace rumor

#endif
