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
#include "trojansim/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace trojansim {
namespace {

// Shortest representation that round-trips exactly; locale-independent.
std::string format_double(double value)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        throw std::runtime_error("TimeSeries: failed to format value");
    return std::string(buf, ptr);
}

double parse_double(std::string_view token, std::size_t line_no)
{
    double value      = 0.0;
    const char* first = token.data();
    const char* last  = token.data() + token.size();
    auto [ptr, ec]    = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error("TimeSeries: bad numeric field at line " +
                                 std::to_string(line_no));
    return value;
}

} // namespace

void TimeSeries::append(double sus, double inf, double rec, double imm)
{
    susceptible.push_back(sus);
    infected.push_back(inf);
    recovered.push_back(rec);
    immune.push_back(imm);
}

void TimeSeries::reserve(std::size_t n)
{
    susceptible.reserve(n);
    infected.reserve(n);
    recovered.reserve(n);
    immune.reserve(n);
}

std::vector<double> TimeSeries::protected_counts() const
{
    std::vector<double> out(size());
    for (std::size_t t = 0; t < size(); ++t)
        out[t] = recovered[t] + immune[t];
    return out;
}

void TimeSeries::pad_to(std::size_t n)
{
    if (empty())
        throw std::logic_error("TimeSeries::pad_to on empty series");
    while (size() < n)
        append(susceptible.back(), infected.back(), recovered.back(), immune.back());
}

void write_csv(std::ostream& out, const TimeSeries& series)
{
    out << kTimeSeriesCsvHeader << '\n';
    for (std::size_t t = 0; t < series.size(); ++t) {
        out << t << ',' << format_double(series.susceptible[t]) << ','
            << format_double(series.infected[t]) << ',' << format_double(series.recovered[t])
            << ',' << format_double(series.immune[t]) << ','
            << format_double(series.recovered[t] + series.immune[t]) << '\n';
    }
}

void write_csv_file(const std::filesystem::path& path, const TimeSeries& series)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    write_csv(out, series);
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

TimeSeries read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("TimeSeries: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kTimeSeriesCsvHeader)
        throw std::runtime_error(std::string("TimeSeries: expected header '") +
                                 kTimeSeriesCsvHeader + "', got '" + line + "'");

    TimeSeries series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        std::string_view rest(line);
        double fields[6];
        for (int f = 0; f < 6; ++f) {
            std::size_t comma = rest.find(',');
            std::string_view token =
                comma == std::string_view::npos ? rest : rest.substr(0, comma);
            if (f < 5 && comma == std::string_view::npos)
                throw std::runtime_error("TimeSeries: expected 6 fields at line " +
                                         std::to_string(line_no));
            if (f == 5 && comma != std::string_view::npos)
                throw std::runtime_error("TimeSeries: expected 6 fields at line " +
                                         std::to_string(line_no));
            fields[f] = parse_double(token, line_no);
            if (comma != std::string_view::npos)
                rest = rest.substr(comma + 1);
        }

        if (fields[0] != static_cast<double>(series.size()))
            throw std::runtime_error("TimeSeries: non-contiguous t column at line " +
                                     std::to_string(line_no));
        double derived = fields[3] + fields[4];
        if (std::abs(fields[5] - derived) > 1e-6 * std::max(1.0, std::abs(derived)))
            throw std::runtime_error("TimeSeries: protected != recovered + immune at line " +
                                     std::to_string(line_no));
        series.append(fields[1], fields[2], fields[3], fields[4]);
    }
    return series;
}

TimeSeries read_csv_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path.string());
    return read_csv(in);
}

TimeSeries average(std::span<const TimeSeries> series)
{
    if (series.empty())
        throw std::invalid_argument("average: no series given");
    const std::size_t n = series.front().size();
    for (const TimeSeries& s : series)
        if (s.size() != n)
            throw std::invalid_argument("average: series lengths differ");

    TimeSeries out;
    out.reserve(n);
    const double scale = 1.0 / static_cast<double>(series.size());
    for (std::size_t t = 0; t < n; ++t) {
        double sus = 0.0, inf = 0.0, rec = 0.0, imm = 0.0;
        for (const TimeSeries& s : series) {
            sus += s.susceptible[t];
            inf += s.infected[t];
            rec += s.recovered[t];
            imm += s.immune[t];
        }
        out.append(sus * scale, inf * scale, rec * scale, imm * scale);
    }
    return out;
}

} // namespace trojansim
