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
#include "trojansim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trojansim {

AvSchedule AvSchedule::none()
{
    return AvSchedule{};
}

AvSchedule AvSchedule::linear(double c0, int t_max, double beta_max)
{
    AvSchedule s;
    s.kind     = ScheduleKind::linear;
    s.c0       = c0;
    s.t_max    = t_max;
    s.beta_max = beta_max;
    s.validate();
    return s;
}

AvSchedule AvSchedule::exponential(double c1, double c2, int t_max, double beta_max)
{
    AvSchedule s;
    s.kind     = ScheduleKind::exponential;
    s.c1       = c1;
    s.c2       = c2;
    s.t_max    = t_max;
    s.beta_max = beta_max;
    s.validate();
    return s;
}

AvSchedule AvSchedule::from_table(std::vector<std::pair<int, double>> table, int t_max,
                                  double beta_max)
{
    AvSchedule s;
    s.kind     = ScheduleKind::table;
    s.table    = std::move(table);
    s.t_max    = t_max;
    s.beta_max = beta_max;
    s.validate();
    return s;
}

void AvSchedule::validate() const
{
    if (!(beta_max >= 0.0 && beta_max <= 1.0))
        throw std::invalid_argument("AvSchedule: beta_max must be in [0,1]");
    if (kind == ScheduleKind::none)
        return;
    if (t_max < 1)
        throw std::invalid_argument("AvSchedule: t_max must be >= 1");
    switch (kind) {
    case ScheduleKind::linear:
        if (c0 < 0.0)
            throw std::invalid_argument("AvSchedule: linear slope must be non-negative");
        break;
    case ScheduleKind::exponential:
        if (c1 < 0.0 || c2 < 0.0)
            throw std::invalid_argument(
                "AvSchedule: exponential coefficients must be non-negative");
        break;
    case ScheduleKind::table: {
        if (table.empty())
            throw std::invalid_argument("AvSchedule: table must be non-empty");
        int prev_t       = -1;
        double prev_val  = 0.0;
        for (const auto& [t, value] : table) {
            if (t <= prev_t)
                throw std::invalid_argument("AvSchedule: table times must strictly increase");
            if (value < prev_val)
                throw std::invalid_argument("AvSchedule: table values must be non-decreasing");
            if (value < 0.0 || value > beta_max)
                throw std::invalid_argument("AvSchedule: table values must be in [0, beta_max]");
            prev_t   = t;
            prev_val = value;
        }
        break;
    }
    case ScheduleKind::none:
        break;
    }
}

double beta(const AvSchedule& schedule, int t)
{
    if (schedule.kind == ScheduleKind::none)
        return 0.0;
    if (t >= schedule.t_max)
        return schedule.beta_max;
    double hat = 0.0;
    switch (schedule.kind) {
    case ScheduleKind::linear:
        hat = schedule.c0 * t;
        break;
    case ScheduleKind::exponential:
        hat = schedule.c1 * std::exp(schedule.c2 * t);
        break;
    case ScheduleKind::table: {
        // Step function: value of the last entry at or before t, 0 before the
        // first entry. Table is validated sorted.
        for (const auto& [entry_t, value] : schedule.table) {
            if (entry_t > t)
                break;
            hat = value;
        }
        break;
    }
    case ScheduleKind::none:
        break;
    }
    return std::clamp(hat, 0.0, schedule.beta_max);
}

std::string to_string(ScheduleKind kind)
{
    switch (kind) {
    case ScheduleKind::none: return "none";
    case ScheduleKind::linear: return "linear";
    case ScheduleKind::exponential: return "exponential";
    case ScheduleKind::table: return "table";
    }
    return "none";
}

ScheduleKind schedule_kind_from_string(const std::string& name)
{
    if (name == "none") return ScheduleKind::none;
    if (name == "linear") return ScheduleKind::linear;
    if (name == "exponential") return ScheduleKind::exponential;
    if (name == "table") return ScheduleKind::table;
    throw std::invalid_argument("unknown schedule kind: " + name);
}

} // namespace trojansim
