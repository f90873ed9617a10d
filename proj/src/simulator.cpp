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
#include "trojansim/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel_for.hpp"
#include "trojansim/model.hpp"
#include "trojansim/rng.hpp"

namespace trojansim {
namespace {

struct StepOutcome
{
    int newly_infected = 0;
};

struct RunState
{
    std::vector<NodeState> labels;
    std::vector<NodeState> snapshot;
    int count[4] = {0, 0, 0, 0};

    void init(int node_count, int infiltrator)
    {
        labels.assign(static_cast<std::size_t>(node_count), NodeState::susceptible);
        labels[static_cast<std::size_t>(infiltrator)] = NodeState::infected;
        count[0] = node_count - 1;
        count[1] = 1;
        count[2] = 0;
        count[3] = 0;
    }

    void transition(int node, NodeState to)
    {
        NodeState& label = labels[static_cast<std::size_t>(node)];
        --count[static_cast<int>(label)];
        label = to;
        ++count[static_cast<int>(label)];
    }
};

// One step of one run, reading decisions from per-slot uniforms. All state
// tests use the snapshot taken before the step, so node order is irrelevant.
StepOutcome advance(const Graph& g, const RunConfig& cfg, const RunSetup& setup, int t,
                    RunState& state)
{
    state.snapshot = state.labels;
    const std::vector<NodeState>& prev = state.snapshot;
    const double beta_t                = beta(cfg.schedule, t);
    const double p                     = cfg.params.p;
    const double q                     = cfg.params.q;
    const double delta                 = cfg.params.delta;
    const auto step_t                  = static_cast<std::uint32_t>(t);

    StepOutcome outcome;
    for (int i = 0; i < g.node_count(); ++i) {
        const NodeState prev_label = prev[static_cast<std::size_t>(i)];
        const auto node            = static_cast<std::uint32_t>(i);

        if (prev_label == NodeState::susceptible) {
            // AV updates install independently of visits and preempt any
            // exposure in the same step.
            if (beta_t > 0.0 &&
                slot_uniform(setup.seed, step_t, node, Draw::immunize) < beta_t) {
                state.transition(i, NodeState::immune);
                continue;
            }
            if (!visit_indicator(setup.tau[static_cast<std::size_t>(i)], t))
                continue;
            int infected_neighbors = 0;
            for (std::int32_t j : g.neighbors(i))
                infected_neighbors += prev[static_cast<std::size_t>(j)] == NodeState::infected;
            if (infected_neighbors == 0)
                continue;
            // Independent exposure per infected neighbor; the aggregate
            // success probability needs a single uniform.
            const double infect_prob =
                1.0 - std::pow(1.0 - p, static_cast<double>(infected_neighbors));
            if (slot_uniform(setup.seed, step_t, node, Draw::infect) < infect_prob) {
                state.transition(i, NodeState::infected);
                ++outcome.newly_infected;
            }
        } else if (prev_label == NodeState::infected) {
            if (!visit_indicator(setup.tau[static_cast<std::size_t>(i)], t))
                continue;
            const int d = g.degree(i);
            double alpha;
            if (d == 0) {
                alpha = std::min(q, 1.0);
            } else {
                int uninfected = 0;
                for (std::int32_t j : g.neighbors(i))
                    uninfected += prev[static_cast<std::size_t>(j)] != NodeState::infected;
                alpha = std::min(1.0, q + delta / d * uninfected);
            }
            if (alpha > 0.0 && slot_uniform(setup.seed, step_t, node, Draw::recover) < alpha)
                state.transition(i, NodeState::recovered);
        }
        // recovered and immune are absorbing
    }
    return outcome;
}

// Arms after cumulative infections (infiltrator excluded) reach
// ceil(stop_arm_fraction * V); then fires after stop_window consecutive steps
// whose concurrent infected count stays below stop_threshold. Without arming
// the rule would fire immediately, since every run starts with one infected
// node.
class StopRule
{
public:
    StopRule(const RunConfig& cfg, int node_count)
        : window_(cfg.stop_window), threshold_(cfg.stop_threshold),
          arm_target_(static_cast<int>(
              std::ceil(cfg.stop_arm_fraction * static_cast<double>(node_count)))),
          armed_(arm_target_ <= 0)
    {
    }

    bool should_stop(int newly_infected, int infected_now)
    {
        cumulative_ += newly_infected;
        if (!armed_) {
            if (cumulative_ < arm_target_)
                return false;
            armed_ = true;
        }
        quiet_streak_ = infected_now < threshold_ ? quiet_streak_ + 1 : 0;
        return quiet_streak_ >= window_;
    }

private:
    int window_;
    int threshold_;
    int arm_target_;
    bool armed_;
    int cumulative_   = 0;
    int quiet_streak_ = 0;
};

template <typename OnStep>
RunRecord execute_run(const Graph& g, const RunConfig& cfg, int run_index, OnStep&& on_step)
{
    const RunSetup setup = make_run_setup(cfg, g.node_count(), run_index);

    RunState state;
    state.init(g.node_count(), setup.infiltrator);

    RunRecord record;
    record.run_index   = run_index;
    record.seed        = setup.seed;
    record.infiltrator = setup.infiltrator;
    record.series.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
    record.series.append(state.count[0], state.count[1], state.count[2], state.count[3]);
    on_step(setup, state);

    StopRule stop(cfg, g.node_count());
    for (int t = 1; t <= cfg.horizon; ++t) {
        const StepOutcome outcome = advance(g, cfg, setup, t, state);
        record.series.append(state.count[0], state.count[1], state.count[2], state.count[3]);
        on_step(setup, state);
        record.stop_step = t;
        if (stop.should_stop(outcome.newly_infected, state.count[1])) {
            record.stopped_early = t < cfg.horizon;
            break;
        }
    }
    return record;
}

} // namespace

void RunConfig::validate() const
{
    NodeParams check = params;
    check.tau        = 1; // periods come from TauSpec; params.tau is not used
    check.validate();
    tau.validate();
    schedule.validate();
    if (horizon < 1)
        throw std::invalid_argument("RunConfig: horizon must be >= 1");
    if (stop_window < 1)
        throw std::invalid_argument("RunConfig: stop_window must be >= 1");
    if (stop_threshold < 0)
        throw std::invalid_argument("RunConfig: stop_threshold must be >= 0");
    if (!(stop_arm_fraction >= 0.0 && stop_arm_fraction <= 1.0))
        throw std::invalid_argument("RunConfig: stop_arm_fraction must be in [0,1]");
    if (runs < 1)
        throw std::invalid_argument("RunConfig: runs must be >= 1");
}

RunSetup make_run_setup(const RunConfig& cfg, int node_count, int run_index)
{
    if (node_count < 1)
        throw std::invalid_argument("make_run_setup: node_count must be >= 1");
    if (run_index < 0)
        throw std::out_of_range("make_run_setup: negative run index");

    RunSetup setup;
    setup.seed = derive_stream(cfg.master_seed, static_cast<std::uint64_t>(run_index));
    Rng rng(setup.seed);
    setup.infiltrator =
        static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(node_count)));
    setup.tau.resize(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i)
        setup.tau[static_cast<std::size_t>(i)] = sample_tau(cfg.tau, rng);
    return setup;
}

SimulationResult run_simulation(const Graph& g, const RunConfig& cfg, int workers)
{
    cfg.validate();

    SimulationResult result;
    result.runs.resize(static_cast<std::size_t>(cfg.runs));
    detail::parallel_for(cfg.runs, workers, [&](int k) {
        result.runs[static_cast<std::size_t>(k)] =
            execute_run(g, cfg, k, [](const RunSetup&, const RunState&) {});
    });

    // Pad early-stopped runs to the full horizon before averaging, so the
    // mean at late steps still covers all runs.
    std::vector<TimeSeries> padded;
    padded.reserve(result.runs.size());
    for (const RunRecord& record : result.runs) {
        padded.push_back(record.series);
        padded.back().pad_to(static_cast<std::size_t>(cfg.horizon) + 1);
    }
    result.averaged = average(padded);
    return result;
}

Trajectory replay(const Graph& g, const RunConfig& cfg, int run_index)
{
    cfg.validate();
    if (run_index < 0 || run_index >= cfg.runs)
        throw std::out_of_range("replay: run index out of range");

    Trajectory trajectory;
    RunRecord record = execute_run(g, cfg, run_index, [&](const RunSetup& setup, const RunState& state) {
        if (trajectory.states.empty())
            trajectory.setup = setup;
        trajectory.states.push_back(state.labels);
    });
    trajectory.stop_step     = record.stop_step;
    trajectory.stopped_early = record.stopped_early;
    return trajectory;
}

} // namespace trojansim
