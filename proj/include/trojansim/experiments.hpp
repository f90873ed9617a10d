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
#ifndef TROJANSIM_EXPERIMENTS_HPP
#define TROJANSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trojansim/graph.hpp"
#include "trojansim/metrics.hpp"
#include "trojansim/model.hpp"
#include "trojansim/simulator.hpp"

namespace trojansim {

inline constexpr std::uint64_t kDefaultMasterSeed = 0x6b8f0a3d2c4e5971ull;

// One named propagation scenario: parameter template, AV rollout, visit-period
// distribution, and replication plan. Model replicate k and simulation run k
// share the infiltrator and visit periods drawn from (master_seed, k).
struct ExperimentSpec
{
    std::string id;
    std::string graph_path; // informational; callers load the graph themselves
    NodeParams params;
    TauSpec tau;
    AvSchedule schedule;
    // Presets run the published recurrences; sequential mode remains available
    // for conservation-exact studies.
    UpdateMode mode = UpdateMode::literal_additive;
    int runs        = 100;
    int horizon     = 150;
    std::uint64_t master_seed = kDefaultMasterSeed;

    void validate() const;

    RunConfig to_run_config() const;
};

// Built-in scenario ids:
//   exp1a, exp1b                          free spread, p = 0.5 / 0.75
//   exp2-linear-{150,100,25}              linear AV rollout, T_max variants
//   exp2-exp-{150,100,25}                 exponential AV rollout
//   exp3-{0,0.2,0.4}                      collaborative disinfection sweep
//   exp4-{0,0.2,0.4}                      independent recovery sweep
//   exp5-nodisinf, exp5-collab            frequent visitors (tau ~ E(20))
std::vector<std::string> preset_ids();

// Throws std::invalid_argument on an unknown id.
ExperimentSpec preset(const std::string& id);

// Model-vs-simulation agreement for one state-count curve. Fields are empty
// when the statistic is undefined (constant series for r, all-zero reference
// for the discrepancy).
struct CurveComparison
{
    std::optional<CorrelationResult> correlation;
    std::optional<Discrepancy> discrepancy;
};

struct ExperimentResult
{
    TimeSeries model_avg; // mean over model replicates
    TimeSeries sim_avg;   // mean over simulation runs (early stops padded)
    std::vector<RunRecord> sim_runs;
    std::map<std::string, CurveComparison> curves; // keyed by CSV column name
    std::int64_t clamp_events = 0; // total across model replicates
};

// Runs spec.runs matched model replicates and simulation runs, averages both
// in run-index order, and compares every curve. Output is bit-identical for
// any worker count.
ExperimentResult run_experiment(const Graph& g, const ExperimentSpec& spec, int workers = 1);

// Serialized forms used by write_experiment and the command-line tool.
std::string comparison_json(const ExperimentSpec& spec, const ExperimentResult& result);
std::string spec_json(const ExperimentSpec& spec);
std::string runs_json(std::span<const RunRecord> runs);

// Writes out_dir/<id>/{model.csv, sim_avg.csv, sim_run_<k>.csv...,
// comparison.json, spec.json, runs.json}. Creates directories as needed.
void write_experiment(const std::filesystem::path& out_dir, const ExperimentSpec& spec,
                      const ExperimentResult& result);

// One row of a parameter sweep, computed from the averaged model curves.
struct SweepRow
{
    double value          = 0.0;
    double peak_infected  = 0.0;
    int peak_time         = 0;
    double final_protected = 0.0;
};

// Re-runs the model side of `base` with the named parameter swept across
// `values`. Parameter names: p, delta, q, t_max, tau_mean. Throws
// std::invalid_argument on an unknown name or empty/out-of-range values.
std::vector<SweepRow> sweep(const Graph& g, const ExperimentSpec& base, const std::string& param,
                            std::span<const double> values, int workers = 1);

} // namespace trojansim

#endif
