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
#include "trojansim/experiments.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "parallel_for.hpp"

namespace trojansim {
namespace {

using nlohmann::json;

constexpr const char* kCurveNames[] = {"susceptible", "infected", "recovered", "immune",
                                       "protected"};

std::vector<double> curve_values(const TimeSeries& series, const std::string& name)
{
    if (name == "susceptible")
        return series.susceptible;
    if (name == "infected")
        return series.infected;
    if (name == "recovered")
        return series.recovered;
    if (name == "immune")
        return series.immune;
    if (name == "protected")
        return series.protected_counts();
    throw std::invalid_argument("unknown curve: " + name);
}

CurveComparison compare_curve(const std::vector<double>& model, const std::vector<double>& sim)
{
    CurveComparison comparison;
    try {
        comparison.correlation = pearson(model, sim);
    } catch (const std::invalid_argument&) {
        // constant curve: correlation undefined, reported as null
    }
    try {
        comparison.discrepancy = series_discrepancy(model, sim);
    } catch (const std::invalid_argument&) {
        // all-zero reference curve: percentage base undefined
    }
    return comparison;
}

// Averaged model curves with matched setup draws: replicate k reuses
// simulation run k's infiltrator and visit periods.
TimeSeries model_average(const Graph& g, const ExperimentSpec& spec, int workers,
                         std::int64_t* clamp_events)
{
    const RunConfig cfg = spec.to_run_config();
    std::vector<TimeSeries> replicates(static_cast<std::size_t>(spec.runs));
    std::vector<std::int64_t> clamps(static_cast<std::size_t>(spec.runs), 0);

    detail::parallel_for(spec.runs, workers, [&](int k) {
        const RunSetup setup = make_run_setup(cfg, g.node_count(), k);
        std::vector<NodeParams> params = uniform_params(g.node_count(), spec.params);
        for (std::size_t i = 0; i < params.size(); ++i)
            params[i].tau = setup.tau[i];
        ModelResult result =
            run_model(g, params, spec.schedule, setup.infiltrator, spec.horizon, spec.mode);
        replicates[static_cast<std::size_t>(k)] = std::move(result.series);
        clamps[static_cast<std::size_t>(k)]     = result.clamp_events;
    });

    if (clamp_events) {
        *clamp_events = 0;
        for (std::int64_t c : clamps)
            *clamp_events += c;
    }
    return average(replicates);
}

json curve_json(const CurveComparison& comparison)
{
    json j;
    if (comparison.correlation) {
        j["r"]       = comparison.correlation->r;
        j["p_value"] = comparison.correlation->p_value;
        j["n"]       = comparison.correlation->n;
    } else {
        j["r"]       = nullptr;
        j["p_value"] = nullptr;
        j["n"]       = nullptr;
    }
    if (comparison.discrepancy) {
        j["max_abs_pct"]  = comparison.discrepancy->max_abs_pct;
        j["mean_abs_pct"] = comparison.discrepancy->mean_abs_pct;
        j["argmax_t"]     = comparison.discrepancy->argmax_t;
    } else {
        j["max_abs_pct"]  = nullptr;
        j["mean_abs_pct"] = nullptr;
        j["argmax_t"]     = nullptr;
    }
    return j;
}

json schedule_json(const AvSchedule& schedule)
{
    json j;
    j["kind"]     = to_string(schedule.kind);
    j["beta_max"] = schedule.beta_max;
    if (schedule.kind == ScheduleKind::none)
        return j;
    j["t_max"] = schedule.t_max;
    switch (schedule.kind) {
    case ScheduleKind::linear:
        j["c0"] = schedule.c0;
        break;
    case ScheduleKind::exponential:
        j["c1"] = schedule.c1;
        j["c2"] = schedule.c2;
        break;
    case ScheduleKind::table: {
        json rows = json::array();
        for (const auto& [t, value] : schedule.table)
            rows.push_back(json::array({t, value}));
        j["table"] = rows;
        break;
    }
    case ScheduleKind::none:
        break;
    }
    return j;
}

json tau_json(const TauSpec& tau)
{
    json j;
    if (tau.kind == TauSpec::Kind::fixed) {
        j["kind"]  = "fixed";
        j["fixed"] = tau.fixed;
    } else {
        j["kind"] = "exponential";
        j["mean"] = tau.mean;
    }
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace

void ExperimentSpec::validate() const
{
    if (id.empty())
        throw std::invalid_argument("ExperimentSpec: id must be non-empty");
    NodeParams check = params;
    check.tau        = 1; // periods come from the TauSpec
    check.validate();
    tau.validate();
    schedule.validate();
    if (runs < 1)
        throw std::invalid_argument("ExperimentSpec: runs must be >= 1");
    if (horizon < 1)
        throw std::invalid_argument("ExperimentSpec: horizon must be >= 1");
}

RunConfig ExperimentSpec::to_run_config() const
{
    RunConfig cfg;
    cfg.params      = params;
    cfg.params.tau  = 1;
    cfg.tau         = tau;
    cfg.schedule    = schedule;
    cfg.horizon     = horizon;
    cfg.runs        = runs;
    cfg.master_seed = master_seed;
    return cfg;
}

std::vector<std::string> preset_ids()
{
    return {
        "exp1a",          "exp1b",          "exp2-linear-150", "exp2-linear-100",
        "exp2-linear-25", "exp2-exp-150",   "exp2-exp-100",    "exp2-exp-25",
        "exp3-0",         "exp3-0.2",       "exp3-0.4",        "exp4-0",
        "exp4-0.2",       "exp4-0.4",       "exp5-nodisinf",   "exp5-collab",
    };
}

ExperimentSpec preset(const std::string& id)
{
    ExperimentSpec spec;
    spec.id         = id;
    spec.graph_path = "data/facebook_combined.txt";
    spec.params.p   = 0.5;
    spec.tau        = TauSpec::exponential_mean(40.0);
    spec.schedule   = AvSchedule::none();
    spec.runs       = 100;
    spec.horizon    = 150;

    const auto linear_150 = AvSchedule::linear(0.005, 150);

    if (id == "exp1a") {
        // no AV rollout, no disinfection
    } else if (id == "exp1b") {
        spec.params.p = 0.75;
    } else if (id == "exp2-linear-150") {
        spec.schedule = linear_150;
    } else if (id == "exp2-linear-100") {
        spec.schedule = AvSchedule::linear(0.0076, 100);
    } else if (id == "exp2-linear-25") {
        spec.schedule = AvSchedule::linear(0.031, 25);
    } else if (id == "exp2-exp-150") {
        spec.schedule = AvSchedule::exponential(0.01, 0.029, 150);
    } else if (id == "exp2-exp-100") {
        spec.schedule = AvSchedule::exponential(0.01, 0.044, 100);
    } else if (id == "exp2-exp-25") {
        spec.schedule = AvSchedule::exponential(0.01, 0.18, 25);
    } else if (id == "exp3-0") {
        spec.schedule = linear_150;
    } else if (id == "exp3-0.2") {
        spec.schedule     = linear_150;
        spec.params.delta = 0.2;
    } else if (id == "exp3-0.4") {
        spec.schedule     = linear_150;
        spec.params.delta = 0.4;
    } else if (id == "exp4-0") {
        spec.schedule = linear_150;
    } else if (id == "exp4-0.2") {
        spec.schedule = linear_150;
        spec.params.q = 0.2;
    } else if (id == "exp4-0.4") {
        spec.schedule = linear_150;
        spec.params.q = 0.4;
    } else if (id == "exp5-nodisinf") {
        spec.tau     = TauSpec::exponential_mean(20.0);
        spec.horizon = 80;
    } else if (id == "exp5-collab") {
        spec.tau          = TauSpec::exponential_mean(20.0);
        spec.horizon      = 80;
        spec.schedule     = linear_150;
        spec.params.delta = 0.2;
    } else {
        throw std::invalid_argument("unknown preset: " + id);
    }
    return spec;
}

ExperimentResult run_experiment(const Graph& g, const ExperimentSpec& spec, int workers)
{
    spec.validate();

    ExperimentResult result;
    result.model_avg = model_average(g, spec, workers, &result.clamp_events);

    SimulationResult sim = run_simulation(g, spec.to_run_config(), workers);
    result.sim_avg       = std::move(sim.averaged);
    result.sim_runs      = std::move(sim.runs);

    for (const char* name : kCurveNames)
        result.curves[name] =
            compare_curve(curve_values(result.model_avg, name), curve_values(result.sim_avg, name));
    return result;
}

std::string comparison_json(const ExperimentSpec& spec, const ExperimentResult& result)
{
    json j;
    j["id"]           = spec.id;
    j["runs"]         = spec.runs;
    j["horizon"]      = spec.horizon;
    j["clamp_events"] = result.clamp_events;
    json curves       = json::object();
    for (const auto& [name, comparison] : result.curves)
        curves[name] = curve_json(comparison);
    j["curves"] = curves;
    return j.dump(2);
}

std::string spec_json(const ExperimentSpec& spec)
{
    json j;
    j["id"]         = spec.id;
    j["graph_path"] = spec.graph_path;
    j["params"]     = {{"p", spec.params.p}, {"delta", spec.params.delta}, {"q", spec.params.q}};
    j["tau"]        = tau_json(spec.tau);
    j["schedule"]   = schedule_json(spec.schedule);
    j["mode"]       = to_string(spec.mode);
    j["runs"]       = spec.runs;
    j["horizon"]    = spec.horizon;
    j["master_seed"] = spec.master_seed;
    return j.dump(2);
}

std::string runs_json(std::span<const RunRecord> runs)
{
    json rows = json::array();
    for (const RunRecord& run : runs) {
        rows.push_back({{"run_index", run.run_index},
                        {"seed", run.seed},
                        {"infiltrator", run.infiltrator},
                        {"stop_step", run.stop_step},
                        {"stopped_early", run.stopped_early}});
    }
    return rows.dump(2);
}

void write_experiment(const std::filesystem::path& out_dir, const ExperimentSpec& spec,
                      const ExperimentResult& result)
{
    const std::filesystem::path dir = out_dir / spec.id;
    std::filesystem::create_directories(dir);

    write_csv_file(dir / "model.csv", result.model_avg);
    write_csv_file(dir / "sim_avg.csv", result.sim_avg);
    for (const RunRecord& run : result.sim_runs)
        write_csv_file(dir / ("sim_run_" + std::to_string(run.run_index) + ".csv"), run.series);

    write_text_file(dir / "comparison.json", comparison_json(spec, result));
    write_text_file(dir / "spec.json", spec_json(spec));
    write_text_file(dir / "runs.json", runs_json(result.sim_runs));
}

std::vector<SweepRow> sweep(const Graph& g, const ExperimentSpec& base, const std::string& param,
                            std::span<const double> values, int workers)
{
    if (values.empty())
        throw std::invalid_argument("sweep: values must be non-empty");

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        ExperimentSpec spec = base;
        if (param == "p") {
            spec.params.p = value;
        } else if (param == "delta") {
            spec.params.delta = value;
        } else if (param == "q") {
            spec.params.q = value;
        } else if (param == "t_max") {
            if (spec.schedule.kind == ScheduleKind::none)
                throw std::invalid_argument("sweep: base spec has no AV schedule to vary");
            spec.schedule.t_max = static_cast<int>(std::llround(value));
        } else if (param == "tau_mean") {
            spec.tau = TauSpec::exponential_mean(value);
        } else {
            throw std::invalid_argument("sweep: unknown parameter " + param);
        }
        spec.validate();

        const TimeSeries avg = model_average(g, spec, workers, nullptr);

        SweepRow row;
        row.value = value;
        for (std::size_t t = 0; t < avg.size(); ++t) {
            if (avg.infected[t] > row.peak_infected) {
                row.peak_infected = avg.infected[t];
                row.peak_time     = static_cast<int>(t);
            }
        }
        row.final_protected = avg.protected_at(avg.size() - 1);
        rows.push_back(row);
    }
    return rows;
}

} // namespace trojansim
