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
#ifndef TROJANSIM_SIMULATOR_HPP
#define TROJANSIM_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "trojansim/graph.hpp"
#include "trojansim/params.hpp"
#include "trojansim/schedule.hpp"
#include "trojansim/timeseries.hpp"

namespace trojansim {

enum class NodeState : std::uint8_t {
    susceptible = 0,
    infected    = 1,
    recovered   = 2,
    immune      = 3,
};

// Monte Carlo run batch. Every run draws its own infiltrator and visit
// periods from a stream derived from (master_seed, run_index), so any run can
// be reproduced in isolation and results do not depend on scheduling.
struct RunConfig
{
    NodeParams params; // p, delta, q shared by all nodes; params.tau is unused here
    TauSpec tau;       // visit periods come from this spec, drawn per run
    AvSchedule schedule;
    int horizon          = 150;
    int stop_window      = 4;  // consecutive quiet steps required to stop
    int stop_threshold   = 10; // a step is quiet when the infected count < this
    // The quiet-step rule only arms after cumulative infections (infiltrator
    // excluded) reach ceil(stop_arm_fraction * V); otherwise a run whose
    // outbreak never takes off would stop almost immediately, since it starts
    // with a single infected node. 0 arms immediately.
    double stop_arm_fraction = 0.1;
    int runs             = 100;
    std::uint64_t master_seed = 0;

    void validate() const;
};

// Infiltrator and visit periods for one run, shared verbatim with matched
// model replicates.
struct RunSetup
{
    std::uint64_t seed = 0; // derive_stream(master_seed, run_index)
    int infiltrator    = 0;
    std::vector<int> tau;
};

RunSetup make_run_setup(const RunConfig& cfg, int node_count, int run_index);

struct RunRecord
{
    int run_index      = 0;
    std::uint64_t seed = 0;
    int infiltrator    = 0;
    int stop_step      = 0; // last step actually simulated
    bool stopped_early = false;
    TimeSeries series; // rows t = 0..stop_step (padded copies live in the average only)
};

struct SimulationResult
{
    TimeSeries averaged; // per-step mean over runs, early stops padded with their final row
    std::vector<RunRecord> runs;
};

// Runs cfg.runs independent trajectories and averages them in run-index
// order. `workers` > 1 distributes runs across threads; output is
// bit-identical for any worker count.
SimulationResult run_simulation(const Graph& g, const RunConfig& cfg, int workers = 1);

// Full per-node label history of one run, for debugging and tests.
struct Trajectory
{
    RunSetup setup;
    int stop_step      = 0;
    bool stopped_early = false;
    std::vector<std::vector<NodeState>> states; // states[t][node], t = 0..stop_step
};

// Re-executes run `run_index` of the batch described by cfg. Bit-identical to
// the original run. Throws std::out_of_range when run_index >= cfg.runs.
Trajectory replay(const Graph& g, const RunConfig& cfg, int run_index);

} // namespace trojansim

#endif
