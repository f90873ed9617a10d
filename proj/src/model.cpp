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
#include "trojansim/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace trojansim {

StateDistribution StateDistribution::initial(int node_count, int infiltrator)
{
    if (node_count < 1)
        throw std::invalid_argument("StateDistribution: node_count must be >= 1");
    if (infiltrator < 0 || infiltrator >= node_count)
        throw std::out_of_range("StateDistribution: invalid infiltrator id");
    StateDistribution dist;
    const auto n = static_cast<std::size_t>(node_count);
    dist.sus.assign(n, 1.0);
    dist.inf.assign(n, 0.0);
    dist.rec.assign(n, 0.0);
    dist.imm.assign(n, 0.0);
    dist.sus[static_cast<std::size_t>(infiltrator)] = 0.0;
    dist.inf[static_cast<std::size_t>(infiltrator)] = 1.0;
    dist.t = 0;
    return dist;
}

std::string to_string(UpdateMode mode)
{
    return mode == UpdateMode::sequential ? "sequential" : "literal-additive";
}

UpdateMode update_mode_from_string(const std::string& name)
{
    if (name == "sequential")
        return UpdateMode::sequential;
    if (name == "literal-additive" || name == "literal_additive")
        return UpdateMode::literal_additive;
    throw std::invalid_argument("unknown update mode: " + name);
}

double gamma_probability(const Graph& g, int node, std::span<const double> inf_prev, double p)
{
    double escape = 1.0;
    for (std::int32_t j : g.neighbors(node))
        escape *= 1.0 - p * inf_prev[static_cast<std::size_t>(j)];
    return 1.0 - escape;
}

double alpha_probability(const Graph& g, int node, std::span<const double> inf_prev, double q,
                         double delta)
{
    const int d = g.degree(node);
    if (d == 0)
        return std::min(q, 1.0);
    double uninfected = 0.0;
    for (std::int32_t j : g.neighbors(node))
        uninfected += 1.0 - inf_prev[static_cast<std::size_t>(j)];
    return std::min(1.0, q + delta / d * uninfected);
}

void step(const Graph& g, std::span<const NodeParams> params, const AvSchedule& schedule, int t,
          UpdateMode mode, const StateDistribution& prev, StateDistribution& next,
          StepStats* stats)
{
    const auto n = static_cast<std::size_t>(g.node_count());
    if (prev.size() != n || params.size() != n)
        throw std::invalid_argument("step: size mismatch between graph, params, and state");
    if (&prev == &next)
        throw std::invalid_argument("step: prev and next must be distinct");
    if (t < 1)
        throw std::invalid_argument("step: t must be >= 1");

    next.sus.resize(n);
    next.inf.resize(n);
    next.rec.resize(n);
    next.imm.resize(n);

    const double beta_t         = beta(schedule, t);
    const double* const inf_prev = prev.inf.data();

    for (std::size_t i = 0; i < n; ++i) {
        const NodeParams& np = params[i];
        const double sus     = prev.sus[i];
        const double inf     = prev.inf[i];

        double v_gamma = 0.0;
        double v_alpha = 0.0;
        if (visit_indicator(np.tau, t)) {
            // One adjacency pass feeds both the infection product and the
            // uninfected-neighbor sum.
            const auto nbrs   = g.neighbors(static_cast<int>(i));
            double escape     = 1.0;
            double inf_sum    = 0.0;
            for (std::int32_t j : nbrs) {
                const double pj = inf_prev[static_cast<std::size_t>(j)];
                escape *= 1.0 - np.p * pj;
                inf_sum += pj;
            }
            v_gamma = 1.0 - escape;
            const double d = static_cast<double>(nbrs.size());
            v_alpha        = d > 0.0 ? std::min(1.0, np.q + np.delta / d * (d - inf_sum))
                                     : std::min(np.q, 1.0);
        }

        if (mode == UpdateMode::sequential) {
            next.sus[i] = (1.0 - beta_t) * (1.0 - v_gamma) * sus;
            next.inf[i] = (1.0 - v_alpha) * inf + (1.0 - beta_t) * v_gamma * sus;
            next.rec[i] = prev.rec[i] + v_alpha * inf;
            next.imm[i] = prev.imm[i] + beta_t * sus;
        } else {
            double keep = 1.0 - beta_t - v_gamma;
            if (keep < 0.0) {
                keep = 0.0;
                if (stats)
                    ++stats->clamp_events;
            }
            next.sus[i] = keep * sus;
            next.inf[i] = v_gamma * sus + (1.0 - v_alpha) * inf;
            next.rec[i] = v_alpha * inf + prev.rec[i];
            next.imm[i] = beta_t * sus + prev.imm[i];
        }
    }
    next.t = t;
}

ModelResult run_model(const Graph& g, std::span<const NodeParams> params,
                      const AvSchedule& schedule, int infiltrator, int horizon, UpdateMode mode,
                      const StepObserver& observer)
{
    if (horizon < 1)
        throw std::invalid_argument("run_model: horizon must be >= 1");
    if (params.size() != static_cast<std::size_t>(g.node_count()))
        throw std::invalid_argument("run_model: params size must match node count");
    for (const NodeParams& np : params)
        np.validate();
    schedule.validate();

    StateDistribution prev = StateDistribution::initial(g.node_count(), infiltrator);
    StateDistribution next;
    StepStats stats;

    ModelResult result;
    result.series.reserve(static_cast<std::size_t>(horizon) + 1);

    auto accumulate = [&](const StateDistribution& dist) {
        double sus = 0.0, inf = 0.0, rec = 0.0, imm = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            sus += dist.sus[i];
            inf += dist.inf[i];
            rec += dist.rec[i];
            imm += dist.imm[i];
        }
        result.series.append(sus, inf, rec, imm);
    };

    accumulate(prev);
    for (int t = 1; t <= horizon; ++t) {
        step(g, params, schedule, t, mode, prev, next, &stats);
        accumulate(next);
        if (observer)
            observer(next);
        std::swap(prev, next);
    }
    result.clamp_events = stats.clamp_events;
    return result;
}

} // namespace trojansim
