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
#ifndef TROJANSIM_TIMESERIES_HPP
#define TROJANSIM_TIMESERIES_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace trojansim {

// Expected (or realized) state counts per time step, indexed by t starting at
// 0. protected = recovered + immune is derived, not stored.
struct TimeSeries
{
    std::vector<double> susceptible;
    std::vector<double> infected;
    std::vector<double> recovered;
    std::vector<double> immune;

    std::size_t size() const { return infected.size(); }
    bool empty() const { return infected.empty(); }

    void append(double sus, double inf, double rec, double imm);
    void reserve(std::size_t n);

    double protected_at(std::size_t t) const { return recovered[t] + immune[t]; }
    std::vector<double> protected_counts() const;

    // Extends the series to length n by repeating the last row. Used when
    // averaging runs that stopped early. No-op when size() >= n.
    void pad_to(std::size_t n);
};

inline constexpr const char* kTimeSeriesCsvHeader =
    "t,susceptible,infected,recovered,immune,protected";

// CSV with the exact header above; values use shortest round-trip formatting,
// so write/read is lossless and byte-stable across runs.
void write_csv(std::ostream& out, const TimeSeries& series);
void write_csv_file(const std::filesystem::path& path, const TimeSeries& series);

// Throws std::runtime_error on a wrong header, a non-contiguous t column, or
// an unparseable row (message carries the line number).
TimeSeries read_csv(std::istream& in);
TimeSeries read_csv_file(const std::filesystem::path& path);

// Elementwise mean. All series must share one length; throws otherwise.
TimeSeries average(std::span<const TimeSeries> series);

} // namespace trojansim

#endif
