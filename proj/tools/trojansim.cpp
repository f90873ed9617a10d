/* Copyright 2026 trojansim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Exit codes: 0 success, 1 runtime failure,
// 2 usage/config error (bad flags, unknown keys, missing input files).

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trojansim/experiments.hpp"
#include "trojansim/graph.hpp"
#include "trojansim/metrics.hpp"
#include "trojansim/model.hpp"
#include "trojansim/simulator.hpp"
#include "trojansim/timeseries.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trojansim;

// Problems the user can fix by changing the invocation; mapped to exit 2.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& key, const std::string& text)
{
    double value      = 0.0;
    const char* first = text.data();
    const char* last  = text.data() + text.size();
    auto [ptr, ec]    = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw UsageError("value for '" + key + "' is not a number: '" + text + "'");
    return value;
}

int parse_int(const std::string& key, const std::string& text)
{
    const double value = parse_number(key, text);
    const int rounded  = static_cast<int>(value);
    if (static_cast<double>(rounded) != value)
        throw UsageError("value for '" + key + "' is not an integer: '" + text + "'");
    return rounded;
}

// Shared mutable state the config file, --set overrides, and dedicated flags
// all write into, in that order.
struct RunSettings
{
    ExperimentSpec spec;
    std::string graph;
    int stop_window          = 4;
    int stop_threshold       = 10;
    double stop_arm_fraction = 0.1;

    RunSettings()
    {
        spec.id      = "custom";
        spec.tau     = TauSpec::fixed_period(1);
        spec.horizon = 150;
        spec.runs    = 100;
    }
};

// Applies one dotted-key override. Returns false when the key is unknown.
bool apply_override(RunSettings& settings, const std::string& key, const std::string& value)
{
    ExperimentSpec& spec = settings.spec;
    if (key == "id") {
        spec.id = value;
    } else if (key == "graph") {
        settings.graph = value;
    } else if (key == "model.p") {
        spec.params.p = parse_number(key, value);
    } else if (key == "model.delta") {
        spec.params.delta = parse_number(key, value);
    } else if (key == "model.q") {
        spec.params.q = parse_number(key, value);
    } else if (key == "mode") {
        spec.mode = update_mode_from_string(value);
    } else if (key == "runs") {
        spec.runs = parse_int(key, value);
    } else if (key == "horizon") {
        spec.horizon = parse_int(key, value);
    } else if (key == "seed") {
        spec.master_seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "tau.kind") {
        if (value == "fixed")
            spec.tau.kind = TauSpec::Kind::fixed;
        else if (value == "exponential")
            spec.tau.kind = TauSpec::Kind::exponential;
        else
            throw UsageError("tau.kind must be 'fixed' or 'exponential', got '" + value + "'");
    } else if (key == "tau.fixed") {
        spec.tau.fixed = parse_int(key, value);
    } else if (key == "tau.mean") {
        spec.tau.mean = parse_number(key, value);
    } else if (key == "schedule.kind") {
        spec.schedule.kind = schedule_kind_from_string(value);
    } else if (key == "schedule.beta_max") {
        spec.schedule.beta_max = parse_number(key, value);
    } else if (key == "schedule.t_max") {
        spec.schedule.t_max = parse_int(key, value);
    } else if (key == "schedule.c0") {
        spec.schedule.c0 = parse_number(key, value);
    } else if (key == "schedule.c1") {
        spec.schedule.c1 = parse_number(key, value);
    } else if (key == "schedule.c2") {
        spec.schedule.c2 = parse_number(key, value);
    } else if (key == "sim.stop_window") {
        settings.stop_window = parse_int(key, value);
    } else if (key == "sim.stop_threshold") {
        settings.stop_threshold = parse_int(key, value);
    } else if (key == "sim.stop_arm_fraction") {
        settings.stop_arm_fraction = parse_number(key, value);
    } else {
        return false;
    }
    return true;
}

void apply_overrides(RunSettings& settings, const std::vector<std::string>& pairs)
{
    std::vector<std::string> unknown;
    for (const std::string& pair : pairs) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects key=value, got '" + pair + "'");
        const std::string key   = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        if (!apply_override(settings, key, value))
            unknown.push_back(key);
    }
    if (!unknown.empty()) {
        std::string message = "unknown config keys:";
        for (const std::string& key : unknown)
            message += " " + key;
        throw UsageError(message);
    }
}

// Loads a JSON config file into settings. The schema mirrors the dotted --set
// keys; unknown keys are rejected so typos cannot silently change a run.
void load_config_file(RunSettings& settings, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }

    std::vector<std::string> pairs;
    std::vector<std::string> unknown;
    auto add = [&](const std::string& key, const json& value) {
        pairs.push_back(key + "=" +
                        (value.is_string() ? value.get<std::string>() : value.dump()));
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "model" || key == "tau" || key == "schedule" || key == "sim") {
            if (!value.is_object())
                throw UsageError("config key '" + key + "' must be an object");
            for (const auto& [sub, sub_value] : value.items())
                add(key + "." + sub, sub_value);
        } else if (key == "id" || key == "graph" || key == "mode" || key == "runs" ||
                   key == "horizon" || key == "seed") {
            add(key, value);
        } else {
            unknown.push_back(key);
        }
    }
    if (!unknown.empty()) {
        std::string message = "unknown config keys in " + path + ":";
        for (const std::string& key : unknown)
            message += " " + key;
        throw UsageError(message);
    }
    apply_overrides(settings, pairs);
}

Graph load_graph_checked(const std::string& path)
{
    if (path.empty())
        throw UsageError("no graph given (use --graph or a config file)");
    if (!fs::exists(path))
        throw UsageError("no such file: " + path);
    return load_edge_list_file(path);
}

int resolve_workers(int workers)
{
    if (workers > 0)
        return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string default_out_dir()
{
    const char* env = std::getenv("TROJANSIM_OUT");
    return env && *env ? env : "out";
}

json stats_to_json(const GraphStats& stats)
{
    json j;
    j["node_count"]          = stats.node_count;
    j["edge_count"]          = stats.edge_count;
    j["avg_clustering"]      = stats.avg_clustering;
    j["avg_shortest_path"]   = stats.avg_shortest_path;
    j["diameter"]            = stats.diameter;
    j["max_degree"]          = stats.max_degree;
    j["avg_degree"]          = stats.avg_degree;
    j["log_ratio"]           = stats.log_ratio;
    j["powerlaw_alpha"]      = stats.powerlaw_alpha;
    j["connected"]           = stats.connected;
    j["largest_component"]   = stats.largest_component;
    j["path_sample_sources"] = stats.path_sample_sources;
    return j;
}

// Flags shared by run/simulate/model/sweep. Reads config sources in fixed
// precedence: preset or config file, then --set pairs, then dedicated flags.
struct CommonRunFlags
{
    std::string preset_id;
    std::string config_path;
    std::string graph;
    std::string out_dir = default_out_dir();
    std::vector<std::string> set_pairs;
    std::uint64_t seed = 0;
    int runs           = 0;
    int horizon        = 0;
    std::string mode;
    int workers = 0;

    CLI::Option* seed_opt    = nullptr;
    CLI::Option* runs_opt    = nullptr;
    CLI::Option* horizon_opt = nullptr;
    CLI::Option* mode_opt    = nullptr;
    CLI::Option* graph_opt   = nullptr;

    void attach(CLI::App& cmd, bool with_out = true)
    {
        auto* preset_opt = cmd.add_option("--preset", preset_id, "built-in experiment id");
        auto* config_opt = cmd.add_option("--config", config_path, "JSON config file");
        preset_opt->excludes(config_opt);
        graph_opt = cmd.add_option("--graph", graph, "edge-list file (overrides config)");
        if (with_out)
            cmd.add_option("--out", out_dir,
                           "output directory (default $TROJANSIM_OUT or ./out)");
        cmd.add_option("--set", set_pairs, "dotted-key override, e.g. model.p=0.75")
            ->take_all();
        seed_opt    = cmd.add_option("--seed", seed, "master seed");
        runs_opt    = cmd.add_option("--runs", runs, "replicate/run count");
        horizon_opt = cmd.add_option("--horizon", horizon, "time horizon in steps");
        mode_opt = cmd.add_option("--mode", mode, "update mode: sequential or literal-additive");
        cmd.add_option("--workers", workers, "worker threads (default: all cores)");
    }

    RunSettings resolve() const
    {
        RunSettings settings;
        if (!preset_id.empty()) {
            settings.spec  = preset(preset_id);
            settings.graph = settings.spec.graph_path;
        } else if (!config_path.empty()) {
            load_config_file(settings, config_path);
        }
        apply_overrides(settings, set_pairs);
        if (graph_opt && graph_opt->count() > 0)
            settings.graph = graph;
        if (seed_opt && seed_opt->count() > 0)
            settings.spec.master_seed = seed;
        if (runs_opt && runs_opt->count() > 0)
            settings.spec.runs = runs;
        if (horizon_opt && horizon_opt->count() > 0)
            settings.spec.horizon = horizon;
        if (mode_opt && mode_opt->count() > 0)
            settings.spec.mode = update_mode_from_string(mode);
        settings.spec.graph_path = settings.graph;
        try {
            settings.spec.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return settings;
    }

    RunConfig run_config(const RunSettings& settings) const
    {
        RunConfig cfg           = settings.spec.to_run_config();
        cfg.stop_window         = settings.stop_window;
        cfg.stop_threshold      = settings.stop_threshold;
        cfg.stop_arm_fraction   = settings.stop_arm_fraction;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

void write_text_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
}

int cmd_graph_stats(const std::string& path, const StatsOptions& options)
{
    if (!fs::exists(path))
        throw UsageError("no such file: " + path);
    const Graph g = load_edge_list_file(path);
    std::cout << stats_to_json(graph_stats(g, options)).dump(2) << '\n';
    return 0;
}

int cmd_run(const CommonRunFlags& flags)
{
    const RunSettings settings = flags.resolve();
    const Graph g              = load_graph_checked(settings.graph);
    const ExperimentResult result =
        run_experiment(g, settings.spec, resolve_workers(flags.workers));
    write_experiment(flags.out_dir, settings.spec, result);

    const auto& infected = result.curves.at("infected");
    std::cout << "wrote " << (fs::path(flags.out_dir) / settings.spec.id).string()
              << " (infected-curve r="
              << (infected.correlation ? std::to_string(infected.correlation->r) : "undefined")
              << ")\n";
    return 0;
}

int cmd_simulate(const CommonRunFlags& flags, std::optional<int> window,
                 std::optional<int> threshold, std::optional<double> arm_fraction)
{
    RunSettings settings = flags.resolve();
    if (window)
        settings.stop_window = *window;
    if (threshold)
        settings.stop_threshold = *threshold;
    if (arm_fraction)
        settings.stop_arm_fraction = *arm_fraction;
    const Graph g       = load_graph_checked(settings.graph);
    const RunConfig cfg = flags.run_config(settings);

    const SimulationResult sim = run_simulation(g, cfg, resolve_workers(flags.workers));

    const fs::path dir = fs::path(flags.out_dir) / settings.spec.id;
    fs::create_directories(dir);
    write_csv_file(dir / "sim_avg.csv", sim.averaged);
    for (const RunRecord& run : sim.runs)
        write_csv_file(dir / ("sim_run_" + std::to_string(run.run_index) + ".csv"), run.series);
    write_text_file(dir / "runs.json", runs_json(sim.runs));
    write_text_file(dir / "spec.json", spec_json(settings.spec));
    std::cout << "wrote " << dir.string() << " (" << sim.runs.size() << " runs)\n";
    return 0;
}

int cmd_model(const CommonRunFlags& flags, const std::string& dump_path)
{
    const RunSettings settings = flags.resolve();
    const Graph g              = load_graph_checked(settings.graph);
    const ExperimentSpec& spec = settings.spec;
    const RunConfig cfg        = spec.to_run_config();

    // Averaged model curves over spec.runs replicates with per-replicate
    // infiltrator and visit-period draws.
    std::vector<TimeSeries> replicates;
    replicates.reserve(static_cast<std::size_t>(spec.runs));
    std::int64_t clamp_events = 0;
    for (int k = 0; k < spec.runs; ++k) {
        const RunSetup setup = make_run_setup(cfg, g.node_count(), k);
        std::vector<NodeParams> params = uniform_params(g.node_count(), spec.params);
        for (std::size_t i = 0; i < params.size(); ++i)
            params[i].tau = setup.tau[i];

        StepObserver observer;
        std::ofstream dump;
        if (k == 0 && !dump_path.empty()) {
            dump.open(dump_path);
            if (!dump)
                throw std::runtime_error("cannot open for writing: " + dump_path);
            observer = [&dump](const StateDistribution& dist) {
                for (std::size_t i = 0; i < dist.size(); ++i) {
                    json row;
                    row["t"]    = dist.t;
                    row["node"] = i;
                    row["sus"]  = dist.sus[i];
                    row["inf"]  = dist.inf[i];
                    row["rec"]  = dist.rec[i];
                    row["imm"]  = dist.imm[i];
                    dump << row.dump() << '\n';
                }
            };
        }
        ModelResult result = run_model(g, params, spec.schedule, setup.infiltrator, spec.horizon,
                                       spec.mode, observer);
        clamp_events += result.clamp_events;
        replicates.push_back(std::move(result.series));
    }

    const fs::path dir = fs::path(flags.out_dir) / spec.id;
    fs::create_directories(dir);
    write_csv_file(dir / "model.csv", average(replicates));
    write_text_file(dir / "spec.json", spec_json(spec));
    std::cout << "wrote " << dir.string() << " (replicates=" << spec.runs
              << ", clamp_events=" << clamp_events << ")\n";
    return 0;
}

int cmd_compare(const std::string& path_x, const std::string& path_y)
{
    TimeSeries x, y;
    try {
        x = read_csv_file(path_x);
        y = read_csv_file(path_y);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    std::size_t n = std::min(x.size(), y.size());
    if (n == 0)
        throw UsageError("empty time series");
    if (x.size() != y.size()) {
        std::cerr << "warning: lengths differ (" << x.size() << " vs " << y.size()
                  << "), truncating to " << n << "\n";
        TimeSeries xt, yt;
        for (std::size_t t = 0; t < n; ++t) {
            xt.append(x.susceptible[t], x.infected[t], x.recovered[t], x.immune[t]);
            yt.append(y.susceptible[t], y.infected[t], y.recovered[t], y.immune[t]);
        }
        x = std::move(xt);
        y = std::move(yt);
    }

    const char* names[] = {"susceptible", "infected", "recovered", "immune", "protected"};
    json out            = json::object();
    for (const char* name : names) {
        auto column = [&](const TimeSeries& ts) {
            if (std::string(name) == "protected")
                return ts.protected_counts();
            if (std::string(name) == "susceptible")
                return ts.susceptible;
            if (std::string(name) == "infected")
                return ts.infected;
            if (std::string(name) == "recovered")
                return ts.recovered;
            return ts.immune;
        };
        const std::vector<double> xs = column(x);
        const std::vector<double> ys = column(y);
        json entry;
        try {
            const CorrelationResult c = pearson(xs, ys);
            entry["r"]       = c.r;
            entry["p_value"] = c.p_value;
            entry["n"]       = c.n;
        } catch (const std::invalid_argument&) {
            entry["r"]       = nullptr;
            entry["p_value"] = nullptr;
            entry["n"]       = nullptr;
        }
        try {
            const Discrepancy d   = series_discrepancy(xs, ys);
            entry["max_abs_pct"]  = d.max_abs_pct;
            entry["mean_abs_pct"] = d.mean_abs_pct;
            entry["argmax_t"]     = d.argmax_t;
        } catch (const std::invalid_argument&) {
            entry["max_abs_pct"]  = nullptr;
            entry["mean_abs_pct"] = nullptr;
            entry["argmax_t"]     = nullptr;
        }
        out[name] = entry;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const CommonRunFlags& flags, const std::string& param,
              const std::vector<double>& values, bool as_json)
{
    const RunSettings settings = flags.resolve();
    const Graph g              = load_graph_checked(settings.graph);

    std::vector<SweepRow> rows;
    try {
        rows = sweep(g, settings.spec, param, values, resolve_workers(flags.workers));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (as_json) {
        json out = json::array();
        for (const SweepRow& row : rows)
            out.push_back({{"value", row.value},
                           {"peak_infected", row.peak_infected},
                           {"peak_time", row.peak_time},
                           {"final_protected", row.final_protected}});
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "value,peak_infected,peak_time,final_protected\n";
        for (const SweepRow& row : rows)
            std::cout << row.value << ',' << row.peak_infected << ',' << row.peak_time << ','
                      << row.final_protected << '\n';
    }
    return 0;
}

int cmd_generate_graph(int nodes, int attach, double triad, std::uint64_t seed,
                       const std::string& out_path)
{
    auto make = [&]() -> Graph {
        try {
            return generate_synthetic(nodes, attach, triad, seed);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    };
    const Graph g = make();
    save_edge_list_file(g, out_path);
    std::cout << "wrote " << out_path << " (V=" << g.node_count() << ", E=" << g.edge_count()
              << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Trojan propagation model and Monte Carlo simulator for "
                 "undirected online social networks"};
    app.require_subcommand(1);

    // graph-stats
    std::string stats_path;
    StatsOptions stats_options;
    auto* stats_cmd = app.add_subcommand("graph-stats", "print graph statistics as JSON");
    stats_cmd->add_option("path", stats_path, "edge-list file")->required();
    stats_cmd->add_option("--exact-limit", stats_options.exact_path_limit,
                          "max node count for exact all-pairs BFS");
    stats_cmd->add_option("--sample-sources", stats_options.sample_sources,
                          "BFS sources when sampling");
    stats_cmd->add_option("--sample-seed", stats_options.sample_seed, "sampling seed");

    // run
    auto* run_cmd = app.add_subcommand(
        "run", "run matched model + simulation for an experiment and write all artifacts");
    CommonRunFlags run_flags;
    run_flags.attach(*run_cmd);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run the Monte Carlo simulation only");
    CommonRunFlags sim_flags;
    sim_flags.attach(*sim_cmd);
    int stop_window          = 4;
    int stop_threshold       = 10;
    double stop_arm_fraction = 0.1;
    auto* window_opt =
        sim_cmd->add_option("--stop-window", stop_window, "consecutive quiet steps to stop");
    auto* threshold_opt = sim_cmd->add_option("--stop-threshold", stop_threshold,
                                              "quiet means infected count < this");
    auto* arm_opt = sim_cmd->add_option("--stop-arm-fraction", stop_arm_fraction,
                                        "cumulative-infection fraction that arms the stop rule");

    // model
    auto* model_cmd = app.add_subcommand("model", "run the probability model only");
    CommonRunFlags model_flags;
    model_flags.attach(*model_cmd);
    std::string dump_path;
    model_cmd->add_option("--dump", dump_path,
                          "write per-node distributions of replicate 0 as JSON lines");

    // compare
    std::string compare_x, compare_y;
    auto* compare_cmd =
        app.add_subcommand("compare", "correlate two time-series CSV files column by column");
    compare_cmd->add_option("model_csv", compare_x, "first series (model)")->required();
    compare_cmd->add_option("sim_csv", compare_y, "second series (reference)")->required();

    // sweep
    auto* sweep_cmd =
        app.add_subcommand("sweep", "vary one parameter and tabulate peak/final model counts");
    CommonRunFlags sweep_flags;
    sweep_flags.attach(*sweep_cmd, /*with_out=*/false);
    std::string sweep_param;
    std::vector<double> sweep_values;
    bool sweep_json = false;
    sweep_cmd->add_option("--param", sweep_param, "one of: p, delta, q, t_max, tau_mean")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "values to sweep")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_flag("--json", sweep_json, "emit JSON instead of CSV");

    // generate-graph
    auto* gen_cmd = app.add_subcommand(
        "generate-graph", "write a synthetic preferential-attachment graph with triad formation");
    int gen_nodes = 1000, gen_attach = 5;
    double gen_triad       = 0.9;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen_cmd->add_option("--nodes", gen_nodes, "node count");
    gen_cmd->add_option("--attach", gen_attach, "edges per new node");
    gen_cmd->add_option("--triad", gen_triad, "triad-formation probability");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output edge-list file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (stats_cmd->parsed())
            return cmd_graph_stats(stats_path, stats_options);
        if (run_cmd->parsed())
            return cmd_run(run_flags);
        if (sim_cmd->parsed())
            return cmd_simulate(
                sim_flags,
                window_opt->count() > 0 ? std::optional<int>(stop_window) : std::nullopt,
                threshold_opt->count() > 0 ? std::optional<int>(stop_threshold) : std::nullopt,
                arm_opt->count() > 0 ? std::optional<double>(stop_arm_fraction) : std::nullopt);
        if (model_cmd->parsed())
            return cmd_model(model_flags, dump_path);
        if (compare_cmd->parsed())
            return cmd_compare(compare_x, compare_y);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_flags, sweep_param, sweep_values, sweep_json);
        if (gen_cmd->parsed())
            return cmd_generate_graph(gen_nodes, gen_attach, gen_triad, gen_seed, gen_out);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
