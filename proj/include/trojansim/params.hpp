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
#ifndef TROJANSIM_PARAMS_HPP
#define TROJANSIM_PARAMS_HPP

#include <cstdint>
#include <vector>

#include "trojansim/rng.hpp"

namespace trojansim {

// Behavioral parameters of one node.
//   p     probability of executing a malicious link on exposure
//   delta probability of accepting a disinfection offer from a clean friend
//   q     probability of independent recovery per visit
//   tau   message-checking period; the node visits the network when t % tau == 0
// q + delta <= 1: the remainder 1 - q - delta is the chance of taking no action.
struct NodeParams
{
    double p     = 0.5;
    double delta = 0.0;
    double q     = 0.0;
    int tau      = 1;

    // Throws std::invalid_argument on out-of-range fields or q + delta > 1.
    void validate() const;
};

// How per-node visit periods are assigned for a run.
struct TauSpec
{
    enum class Kind {
        fixed,       // every node gets `fixed` as its period
        exponential, // tau_i = max(1, ceil(Exp(mean))) sampled per node
    };

    Kind kind   = Kind::fixed;
    int fixed   = 1;
    double mean = 1.0;

    static TauSpec fixed_period(int tau);
    static TauSpec exponential_mean(double mean);

    void validate() const;
};

// Draws one visit period. Exponential draws round up so tau >= 1 always holds.
int sample_tau(const TauSpec& spec, Rng& rng);

// Uniform parameter vector for a graph of `node_count` nodes. tau comes from
// template_params.tau; callers overwrite it per node when sampling.
std::vector<NodeParams> uniform_params(int node_count, const NodeParams& template_params);

} // namespace trojansim

#endif
