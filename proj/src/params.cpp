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
#include "trojansim/params.hpp"

#include <cmath>
#include <stdexcept>

namespace trojansim {

void NodeParams::validate() const
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("NodeParams: p must be in [0,1]");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("NodeParams: delta must be in [0,1]");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("NodeParams: q must be in [0,1]");
    if (q + delta > 1.0)
        throw std::invalid_argument("NodeParams: q + delta must not exceed 1");
    if (tau < 1)
        throw std::invalid_argument("NodeParams: tau must be >= 1");
}

TauSpec TauSpec::fixed_period(int tau)
{
    TauSpec spec;
    spec.kind  = Kind::fixed;
    spec.fixed = tau;
    spec.validate();
    return spec;
}

TauSpec TauSpec::exponential_mean(double mean)
{
    TauSpec spec;
    spec.kind = Kind::exponential;
    spec.mean = mean;
    spec.validate();
    return spec;
}

void TauSpec::validate() const
{
    if (kind == Kind::fixed && fixed < 1)
        throw std::invalid_argument("TauSpec: fixed period must be >= 1");
    if (kind == Kind::exponential && !(mean > 0.0))
        throw std::invalid_argument("TauSpec: exponential mean must be positive");
}

int sample_tau(const TauSpec& spec, Rng& rng)
{
    if (spec.kind == TauSpec::Kind::fixed)
        return spec.fixed;
    double draw = rng.exponential(spec.mean);
    double up   = std::ceil(draw);
    if (up < 1.0)
        return 1;
    return static_cast<int>(up);
}

std::vector<NodeParams> uniform_params(int node_count, const NodeParams& template_params)
{
    template_params.validate();
    if (node_count < 1)
        throw std::invalid_argument("uniform_params: node_count must be >= 1");
    return std::vector<NodeParams>(static_cast<std::size_t>(node_count), template_params);
}

} // namespace trojansim
