// Command-line front end: graph generation, SI simulation, source detection,
// likelihood-vs-time curves, and the benchmark harness.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumor/bench.hpp"
#include "rumor/errors.hpp"
#include "rumor/generators.hpp"
#include "rumor/graph.hpp"
#include "rumor/likelihood.hpp"
#include "rumor/si_sim.hpp"
#include "rumor/starlike.hpp"

namespace {

using nlohmann::json;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file)
        throw rumor::input_error("cannot open output file '" + path + "'");
    return file;
}

rumor::LoadedGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw rumor::input_error("cannot open graph file '" + path + "'");
    return rumor::load_edge_list(in);
}

rumor::RumorSnapshot read_snapshot(const std::string& path, const rumor::LoadedGraph& lg) {
    std::ifstream in(path);
    if (!in)
        throw rumor::input_error("cannot open infected-set file '" + path + "'");
    return rumor::load_infected_set(in, lg);
}

void write_edge_list(std::ostream& out, const rumor::Graph& g) {
    out << "# nodes " << g.node_count() << "\n";
    for (rumor::NodeId u = 0; u < g.node_count(); ++u)
        for (rumor::NodeId v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << "\n";
}

struct DetectOptions {
    std::string graph_path, infected_path, method = "starlike", out_path;
    uint64_t seed = 0;
    bool peak = false;
    double t_max = 10.0;
    int t_steps = 200;
    rumor::QuadratureConfig quad;
};

void add_quadrature_flags(CLI::App* cmd, rumor::QuadratureConfig& q) {
    cmd->add_option("--abs-tol", q.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--rel-tol", q.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--max-subdivisions", q.max_subdivisions, "Quadrature panel budget");
}

int run(int argc, char** argv) {
    CLI::App app{"Contagion source detection toolkit"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "Generate a graph and emit its edge list");
    std::string gen_type = "er", gen_out;
    int gen_n = 50, gen_arms = 3, gen_arm_len = 1, gen_w = 5, gen_h = 5;
    double gen_p = 0.04;
    uint64_t gen_seed = 0;
    gen->add_option("--type", gen_type, "er | tree | line | star | grid")->required();
    gen->add_option("-n,--nodes", gen_n, "Node count (er, tree, line)");
    gen->add_option("-p,--prob", gen_p, "Edge probability (er)");
    gen->add_option("--arms", gen_arms, "Arm count (star)");
    gen->add_option("--arm-len", gen_arm_len, "Arm length (star)");
    gen->add_option("--width", gen_w, "Grid width");
    gen->add_option("--height", gen_h, "Grid height");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "Run one SI spread and emit the infected set");
    std::string sim_graph, sim_out, sim_times_out;
    long long sim_source = 0;
    int sim_n = 0;
    double sim_t = 0.0, sim_rate = 1.0;
    uint64_t sim_seed = 0;
    sim->add_option("--graph", sim_graph, "Edge-list file")->required();
    sim->add_option("--source", sim_source, "Source node label")->required();
    auto* opt_n = sim->add_option("-n,--infected", sim_n, "Stop at this many infected nodes");
    auto* opt_t = sim->add_option("-t,--horizon", sim_t, "Stop at this time");
    opt_n->excludes(opt_t);
    sim->add_option("--rate", sim_rate, "Exponential delay rate (lambda)");
    sim->add_option("--seed", sim_seed, "Random seed");
    sim->add_option("-o,--output", sim_out, "Infected-set output (default stdout)");
    sim->add_option("--times", sim_times_out, "Also write per-node infection times here");

    // --- detect ---
    auto* det = app.add_subcommand("detect", "Score candidates and pick a source estimate");
    DetectOptions d;
    det->add_option("--graph", d.graph_path, "Edge-list file")->required();
    det->add_option("--infected", d.infected_path, "Infected-set file")->required();
    det->add_option("--method", d.method, "starlike | mp-tree | rc-bfs | jordan | distance");
    det->add_option("--seed", d.seed, "Tie-break seed");
    bool at_t = false;
    det->add_flag("--at-t", at_t, "Score at the snapshot's observed time (default)");
    det->add_flag("--peak", d.peak, "Score at the peak of the likelihood-vs-time curve");
    det->add_option("--t-max", d.t_max, "Peak search: largest horizon");
    det->add_option("--t-steps", d.t_steps, "Peak search: grid resolution");
    det->add_option("-o,--output", d.out_path, "Output file (default stdout)");
    add_quadrature_flags(det, d.quad);

    // --- curves ---
    auto* cur = app.add_subcommand("curves", "Emit per-node likelihood-vs-time CSV");
    std::string cur_graph, cur_infected, cur_method = "starlike", cur_out;
    double cur_tmin = 0.1, cur_tmax = 10.0;
    int cur_steps = 100;
    rumor::QuadratureConfig cur_quad;
    cur->add_option("--graph", cur_graph, "Edge-list file")->required();
    cur->add_option("--infected", cur_infected, "Infected-set file")->required();
    cur->add_option("--method", cur_method, "starlike | mp-tree");
    cur->add_option("--t-min", cur_tmin, "Smallest horizon");
    cur->add_option("--t-max", cur_tmax, "Largest horizon");
    cur->add_option("--t-steps", cur_steps, "Grid points");
    cur->add_option("-o,--output", cur_out, "Output file (default stdout)");
    add_quadrature_flags(cur, cur_quad);

    // --- bench ---
    auto* ben = app.add_subcommand("bench", "Run a benchmark experiment");
    std::string ben_config, ben_csv, ben_jsonl;
    std::vector<std::string> ben_overrides;
    ben->add_option("--config", ben_config, "key=value config file");
    ben->add_option("--set", ben_overrides,
                    "Override a config key, e.g. --set trials=300 (repeatable)");
    ben->add_option("--out-csv", ben_csv, "Aggregate CSV output (default stdout)");
    ben->add_option("--out-jsonl", ben_jsonl, "Per-trial JSONL output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are input errors
    }

    if (*gen) {
        rumor::Graph g;
        if (gen_type == "er") g = rumor::gen_er(gen_n, gen_p, gen_seed);
        else if (gen_type == "tree") g = rumor::gen_random_tree(gen_n, gen_seed);
        else if (gen_type == "line") g = rumor::gen_line(gen_n);
        else if (gen_type == "star") g = rumor::gen_star(gen_arms, gen_arm_len);
        else if (gen_type == "grid") g = rumor::gen_grid(gen_w, gen_h);
        else throw rumor::input_error("unknown generator type '" + gen_type + "'");
        std::ofstream file;
        write_edge_list(open_output(gen_out, file), g);
        return 0;
    }

    if (*sim) {
        auto lg = read_graph(sim_graph);
        rumor::SpreadConfig cfg{sim_rate, sim_seed};
        rumor::NodeId src = lg.require(sim_source);
        rumor::RumorSnapshot snap;
        rumor::SpreadOutcome out;
        if (opt_n->count())
            std::tie(snap, out) = rumor::spread_until_n(lg.graph, src, sim_n, cfg);
        else if (opt_t->count())
            std::tie(snap, out) = rumor::spread_until_t(lg.graph, src, sim_t, cfg);
        else
            throw rumor::input_error("simulate: one of -n or -t is required");
        std::ofstream file;
        auto& os = open_output(sim_out, file);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", snap.observed_time);
        os << "# t=" << buf << "\n";
        for (rumor::NodeId v : snap.infected)
            os << lg.labels[static_cast<size_t>(v)] << "\n";
        if (!sim_times_out.empty()) {
            std::ofstream tf(sim_times_out);
            if (!tf)
                throw rumor::input_error("cannot open '" + sim_times_out + "'");
            for (rumor::NodeId v : snap.infected) {
                std::snprintf(buf, sizeof(buf), "%.17g",
                              out.infection_time[static_cast<size_t>(v)]);
                tf << lg.labels[static_cast<size_t>(v)] << ' ' << buf << "\n";
            }
        }
        return 0;
    }

    if (*det) {
        auto lg = read_graph(d.graph_path);
        auto snap = read_snapshot(d.infected_path, lg);
        rumor::Method method = rumor::method_from_name(d.method);
        rumor::DetectionResult res =
            d.peak ? rumor::detect_source_peak(lg.graph, snap, method, d.quad, d.seed, d.t_max,
                                               d.t_steps)
                   : rumor::detect_source(lg.graph, snap, method, d.quad, d.seed);
        json j;
        j["method"] = rumor::method_name(res.method);
        j["chosen"] = lg.labels[static_cast<size_t>(res.chosen)];
        j["tied"] = json::array();
        for (rumor::NodeId v : res.tied)
            j["tied"].push_back(lg.labels[static_cast<size_t>(v)]);
        j["ranking"] = json::array();
        for (const auto& [node, score] : res.ranking)
            j["ranking"].push_back({{"node", lg.labels[static_cast<size_t>(node)]},
                                    {"log_score", score}});
        j["time"] = snap.observed_time;
        std::ofstream file;
        open_output(d.out_path, file) << j.dump(2) << "\n";
        return 0;
    }

    if (*cur) {
        auto lg = read_graph(cur_graph);
        auto snap = read_snapshot(cur_infected, lg);
        rumor::Method method = rumor::method_from_name(cur_method);
        if (method != rumor::Method::starlike && method != rumor::Method::mp_tree)
            throw rumor::input_error("curves: method must be starlike or mp-tree");
        if (!(cur_tmin > 0.0) || !(cur_tmax >= cur_tmin) || cur_steps < 1)
            throw rumor::input_error("curves: need 0 < t-min <= t-max and t-steps >= 1");
        std::ofstream file;
        auto& os = open_output(cur_out, file);
        os << "node,T,log_likelihood\n";
        for (rumor::NodeId v : snap.infected) {
            for (int j = 0; j < cur_steps; ++j) {
                double t = cur_steps == 1
                               ? cur_tmin
                               : cur_tmin + (cur_tmax - cur_tmin) * j / (cur_steps - 1);
                rumor::RumorSnapshot at = snap;
                at.observed_time = t;
                double score = method == rumor::Method::starlike
                                   ? rumor::starlike_likelihood(lg.graph, at, v, cur_quad)
                                   : rumor::mp_likelihood(lg.graph, at, v, cur_quad);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.10g,%.10g", t, score);
                os << lg.labels[static_cast<size_t>(v)] << ',' << buf << "\n";
            }
        }
        return 0;
    }

    if (*ben) {
        rumor::ExperimentConfig cfg;
        if (!ben_config.empty()) {
            std::ifstream in(ben_config);
            if (!in)
                throw rumor::input_error("cannot open config file '" + ben_config + "'");
            cfg = rumor::load_config(in);
        }
        for (const std::string& kv : ben_overrides) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw rumor::input_error("--set expects key=value, got '" + kv + "'");
            rumor::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        rumor::BenchResult res = rumor::run_experiment(cfg);
        std::ofstream file;
        open_output(ben_csv, file) << res.csv;
        if (!ben_jsonl.empty()) {
            std::ofstream jf(ben_jsonl);
            if (!jf)
                throw rumor::input_error("cannot open '" + ben_jsonl + "'");
            jf << res.jsonl;
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rumor::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const rumor::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
