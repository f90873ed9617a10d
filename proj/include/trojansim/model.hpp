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
#ifndef TROJANSIM_MODEL_HPP
#define TROJANSIM_MODEL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trojansim/graph.hpp"
#include "trojansim/params.hpp"
#include "trojansim/schedule.hpp"
#include "trojansim/timeseries.hpp"

namespace trojansim {

// Per-node state-probability vectors (P_sus, P_inf, P_rec, P_imm) at time t,
// stored column-wise. In sequential mode each node's four entries sum to 1
// within 1e-9 for all reachable states.
struct StateDistribution
{
    std::vector<double> sus;
    std::vector<double> inf;
    std::vector<double> rec;
    std::vector<double> imm;
    int t = 0;

    std::size_t size() const { return sus.size(); }

    // All probability on susceptible except the infiltrator, which starts
    // infected with probability 1.
    static StateDistribution initial(int node_count, int infiltrator);
};

enum class UpdateMode {
    // Immunization first, infection on the remainder: transitions compose as
    // conditional probabilities and each node's vector stays a distribution.
    sequential,
    // The published recurrences verbatim (with the sign of the infection loss
    // term corrected): gains are added, the susceptible multiplier
    // 1 - beta - v*gamma is clamped at 0, and each clamp is counted.
    literal_additive,
};

std::string to_string(UpdateMode mode);
UpdateMode update_mode_from_string(const std::string& name);

// 1 iff the node visits the network at step t (t % tau == 0). tau >= 1, t >= 1.
inline int visit_indicator(int tau, int t)
{
    return t % tau == 0 ? 1 : 0;
}

// Infection pressure on `node` from the previous step's infection
// probabilities: 1 - prod over neighbors j of (1 - p * inf_prev[j]).
// 0 for isolated nodes.
double gamma_probability(const Graph& g, int node, std::span<const double> inf_prev, double p);

// Recovery probability on a visit: q + (delta / d) * sum over neighbors j of
// (1 - inf_prev[j]), clamped to [0, 1]. q alone when the node is isolated.
double alpha_probability(const Graph& g, int node, std::span<const double> inf_prev, double q,
                         double delta);

struct StepStats
{
    // Number of (node, step) pairs where literal-additive clamped the
    // susceptible multiplier at 0. Always 0 in sequential mode.
    std::int64_t clamp_events = 0;
};

// Advances `prev` (at time t-1) to `next` (at time t). Reads only the prev
// snapshot, so per-node work is order-independent. prev and next must be
// distinct objects sized to g.node_count().
void step(const Graph& g, std::span<const NodeParams> params, const AvSchedule& schedule, int t,
          UpdateMode mode, const StateDistribution& prev, StateDistribution& next,
          StepStats* stats = nullptr);

struct ModelResult
{
    TimeSeries series; // expected counts, rows t = 0..horizon
    std::int64_t clamp_events = 0;
};

// Called with the distribution after every step (t = 1..horizon); pass to
// inspect or dump per-node probabilities.
using StepObserver = std::function<void(const StateDistribution&)>;

// Iterates `step` from the deterministic initial state and accumulates
// expected counts per state. Throws std::out_of_range on a bad infiltrator,
// std::invalid_argument when params.size() != node count or horizon < 1.
ModelResult run_model(const Graph& g, std::span<const NodeParams> params,
                      const AvSchedule& schedule, int infiltrator, int horizon,
                      UpdateMode mode = UpdateMode::sequential,
                      const StepObserver& observer = {});

} // namespace trojansim

#endif
