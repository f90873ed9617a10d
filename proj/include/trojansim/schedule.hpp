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
#ifndef TROJANSIM_SCHEDULE_HPP
#define TROJANSIM_SCHEDULE_HPP

#include <string>
#include <utility>
#include <vector>

namespace trojansim {

enum class ScheduleKind {
    none,        // no antivirus rollout, beta(t) = 0
    linear,      // beta_hat(t) = c0 * t
    exponential, // beta_hat(t) = c1 * exp(c2 * t)
    table,       // step function through (t, value) pairs
};

// Antivirus update rollout. beta(t) is the per-step probability that a
// susceptible node becomes immune at step t: beta_hat(t) while t < t_max,
// beta_max from t_max on, always clamped to [0, beta_max].
struct AvSchedule
{
    ScheduleKind kind = ScheduleKind::none;
    double beta_max   = 0.75;
    int t_max         = 1;
    double c0         = 0.0; // linear slope
    double c1         = 0.0; // exponential scale
    double c2         = 0.0; // exponential rate
    std::vector<std::pair<int, double>> table; // sorted by t, non-decreasing values

    static AvSchedule none();
    static AvSchedule linear(double c0, int t_max, double beta_max = 0.75);
    static AvSchedule exponential(double c1, double c2, int t_max, double beta_max = 0.75);
    static AvSchedule from_table(std::vector<std::pair<int, double>> table, int t_max,
                                 double beta_max = 0.75);

    // Throws std::invalid_argument when any evaluated value would fall outside
    // [0, beta_max] before clamping kicks in for the wrong reason: negative
    // coefficients, a decreasing table, t_max < 1, beta_max outside [0,1].
    void validate() const;
};

// Per-step immunization probability at step t (t >= 0). kind none gives 0 for
// all t; other kinds give clamp(beta_hat(t), 0, beta_max) for t < t_max and
// beta_max for t >= t_max. Table schedules evaluate as the value of the last
// entry at or before t (0 before the first entry).
double beta(const AvSchedule& schedule, int t);

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

} // namespace trojansim

#endif
