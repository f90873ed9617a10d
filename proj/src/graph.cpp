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
#include "trojansim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "trojansim/rng.hpp"

namespace trojansim {
namespace {

void check_node(const Graph& g, int v)
{
    if (v < 0 || v >= g.node_count())
        throw std::out_of_range("invalid node id " + std::to_string(v));
}

// CSR construction from a clean (validated, deduplicated) edge list.
void build_csr(int node_count, const std::vector<std::pair<int, int>>& edges,
               std::vector<std::size_t>& offsets, std::vector<std::int32_t>& adjacency)
{
    offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (const auto& [a, b] : edges) {
        ++offsets[static_cast<std::size_t>(a) + 1];
        ++offsets[static_cast<std::size_t>(b) + 1];
    }
    for (std::size_t v = 1; v < offsets.size(); ++v)
        offsets[v] += offsets[v - 1];

    adjacency.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [a, b] : edges) {
        adjacency[cursor[static_cast<std::size_t>(a)]++] = static_cast<std::int32_t>(b);
        adjacency[cursor[static_cast<std::size_t>(b)]++] = static_cast<std::int32_t>(a);
    }
    for (int v = 0; v < node_count; ++v)
        std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                  adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

} // namespace

Graph Graph::from_edges(int node_count, const std::vector<std::pair<int, int>>& edges)
{
    if (node_count < 1)
        throw std::invalid_argument("Graph: node_count must be >= 1");
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("Graph: self-loop on node " + std::to_string(a));
    }

    Graph g;
    build_csr(node_count, edges, g.offsets_, g.adjacency_);
    for (int v = 0; v < node_count; ++v) {
        auto nbrs = g.neighbors(v);
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw std::invalid_argument("Graph: duplicate edge at node " + std::to_string(v));
    }
    g.original_ids_.resize(static_cast<std::size_t>(node_count));
    std::iota(g.original_ids_.begin(), g.original_ids_.end(), std::int64_t{0});
    return g;
}

bool Graph::has_edge(int u, int v) const
{
    check_node(*this, u);
    check_node(*this, v);
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), static_cast<std::int32_t>(v));
}

Graph load_edge_list(std::istream& in, EdgeListStats* stats)
{
    std::unordered_map<std::int64_t, std::int32_t> dense_id;
    std::vector<std::int64_t> original_ids;
    std::vector<std::pair<int, int>> edges;
    EdgeListStats local;

    auto densify = [&](std::int64_t label) {
        auto [it, inserted] = dense_id.try_emplace(label, static_cast<std::int32_t>(original_ids.size()));
        if (inserted)
            original_ids.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();

        const char* ptr = line.data();
        const char* end = line.data() + line.size();
        auto skip_space = [&] {
            while (ptr != end && (*ptr == ' ' || *ptr == '\t'))
                ++ptr;
        };

        skip_space();
        if (ptr == end || *ptr == '#')
            continue;

        std::int64_t ids[2];
        for (int f = 0; f < 2; ++f) {
            if (f == 1) {
                skip_space();
                if (ptr == end)
                    throw ParseError("expected two node ids", line_no);
            }
            auto [next, ec] = std::from_chars(ptr, end, ids[f]);
            if (ec != std::errc{} || (next != end && *next != ' ' && *next != '\t'))
                throw ParseError("malformed node id", line_no);
            if (ids[f] < 0)
                throw ParseError("negative node id", line_no);
            ptr = next;
        }
        skip_space();
        if (ptr != end)
            throw ParseError("trailing characters after edge", line_no);

        if (ids[0] == ids[1]) {
            ++local.self_loops_dropped;
            densify(ids[0]);
            continue;
        }
        int a = densify(ids[0]);
        int b = densify(ids[1]);
        if (a > b)
            std::swap(a, b);
        edges.emplace_back(a, b);
    }

    if (edges.empty())
        throw std::invalid_argument("edge list contains no edges");

    std::sort(edges.begin(), edges.end());
    auto unique_end = std::unique(edges.begin(), edges.end());
    local.duplicates_merged = static_cast<std::size_t>(edges.end() - unique_end);
    edges.erase(unique_end, edges.end());

    Graph g;
    build_csr(static_cast<int>(original_ids.size()), edges, g.offsets_, g.adjacency_);
    g.original_ids_ = std::move(original_ids);
    if (stats)
        *stats = local;
    return g;
}

Graph load_edge_list_file(const std::string& path, EdgeListStats* stats)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    return load_edge_list(in, stats);
}

void save_edge_list(const Graph& g, std::ostream& out)
{
    for (int v = 0; v < g.node_count(); ++v)
        for (std::int32_t w : g.neighbors(v))
            if (w > v)
                out << v << ' ' << w << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    save_edge_list(g, out);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

namespace {

// Counts ordered neighbor pairs (j, k) of v that are themselves adjacent; the
// unordered edge count f is half of that, so C(v) = links / (k(k-1)).
double clustering_with_marks(const Graph& g, int v, std::vector<std::uint8_t>& mark)
{
    const int k = g.degree(v);
    if (k < 2)
        return 0.0;
    for (std::int32_t j : g.neighbors(v))
        mark[static_cast<std::size_t>(j)] = 1;
    std::size_t links = 0;
    for (std::int32_t j : g.neighbors(v))
        for (std::int32_t w : g.neighbors(j))
            links += mark[static_cast<std::size_t>(w)];
    for (std::int32_t j : g.neighbors(v))
        mark[static_cast<std::size_t>(j)] = 0;
    return static_cast<double>(links) /
           (static_cast<double>(k) * static_cast<double>(k - 1));
}

struct Components
{
    std::vector<std::int32_t> id; // per node
    int largest       = 0;        // id of the largest component
    int largest_size  = 0;
    int count         = 0;
};

Components find_components(const Graph& g)
{
    const int v_count = g.node_count();
    Components comps;
    comps.id.assign(static_cast<std::size_t>(v_count), -1);
    std::vector<std::int32_t> queue;
    queue.reserve(static_cast<std::size_t>(v_count));

    for (int start = 0; start < v_count; ++start) {
        if (comps.id[static_cast<std::size_t>(start)] != -1)
            continue;
        const int comp = comps.count++;
        queue.clear();
        queue.push_back(start);
        comps.id[static_cast<std::size_t>(start)] = comp;
        std::size_t head = 0;
        int size         = 0;
        while (head < queue.size()) {
            const std::int32_t u = queue[head++];
            ++size;
            for (std::int32_t w : g.neighbors(u)) {
                if (comps.id[static_cast<std::size_t>(w)] == -1) {
                    comps.id[static_cast<std::size_t>(w)] = comp;
                    queue.push_back(w);
                }
            }
        }
        if (size > comps.largest_size) {
            comps.largest_size = size;
            comps.largest      = comp;
        }
    }
    return comps;
}

// Single-source BFS restricted to one component; accumulates distance sum,
// reached-pair count, and eccentricity.
void bfs_accumulate(const Graph& g, int source, std::vector<std::int32_t>& dist,
                    std::vector<std::int32_t>& queue, long double& dist_sum,
                    std::size_t& pair_count, int& max_dist)
{
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[static_cast<std::size_t>(source)] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
        const std::int32_t u = queue[head++];
        const std::int32_t d = dist[static_cast<std::size_t>(u)];
        if (d > max_dist)
            max_dist = d;
        dist_sum += d;
        for (std::int32_t w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = d + 1;
                queue.push_back(w);
            }
        }
    }
    pair_count += queue.size() - 1; // exclude the source itself
}

double fit_powerlaw_alpha(const Graph& g)
{
    int max_degree = 0;
    for (int v = 0; v < g.node_count(); ++v)
        max_degree = std::max(max_degree, g.degree(v));
    std::vector<std::size_t> count(static_cast<std::size_t>(max_degree) + 1, 0);
    for (int v = 0; v < g.node_count(); ++v)
        ++count[static_cast<std::size_t>(g.degree(v))];

    // ge[d] = number of nodes with degree >= d
    std::vector<std::size_t> ge(count.size() + 1, 0);
    for (std::size_t d = count.size(); d-- > 0;)
        ge[d] = ge[d + 1] + count[d];

    // Least squares on (log k, log CCDF(k)) over observed degrees k >= 5.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    const double v_total = static_cast<double>(g.node_count());
    for (std::size_t d = 5; d < count.size(); ++d) {
        if (count[d] == 0)
            continue;
        const double x = std::log(static_cast<double>(d));
        const double y = std::log(static_cast<double>(ge[d]) / v_total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        return std::numeric_limits<double>::quiet_NaN();
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

} // namespace

double clustering_coefficient(const Graph& g, int v)
{
    check_node(g, v);
    std::vector<std::uint8_t> mark(static_cast<std::size_t>(g.node_count()), 0);
    return clustering_with_marks(g, v, mark);
}

GraphStats graph_stats(const Graph& g, const StatsOptions& options)
{
    const int v_count = g.node_count();
    GraphStats stats;
    stats.node_count = v_count;
    stats.edge_count = g.edge_count();
    stats.avg_degree = v_count > 0 ? 2.0 * static_cast<double>(g.edge_count()) / v_count : 0.0;

    std::vector<std::uint8_t> mark(static_cast<std::size_t>(v_count), 0);
    long double clustering_sum = 0.0L;
    for (int v = 0; v < v_count; ++v) {
        stats.max_degree = std::max(stats.max_degree, g.degree(v));
        clustering_sum += clustering_with_marks(g, v, mark);
    }
    stats.avg_clustering = static_cast<double>(clustering_sum / v_count);

    stats.log_ratio = stats.avg_degree > 0.0 && stats.avg_degree != 1.0
                          ? std::log(static_cast<double>(v_count)) / std::log(stats.avg_degree)
                          : std::numeric_limits<double>::quiet_NaN();
    stats.powerlaw_alpha = fit_powerlaw_alpha(g);

    const Components comps = find_components(g);
    stats.connected         = comps.count == 1;
    stats.largest_component = comps.largest_size;

    // Path statistics over the largest component.
    std::vector<std::int32_t> members;
    members.reserve(static_cast<std::size_t>(comps.largest_size));
    for (int v = 0; v < v_count; ++v)
        if (comps.id[static_cast<std::size_t>(v)] == comps.largest)
            members.push_back(v);

    if (members.size() < 2) {
        stats.avg_shortest_path  = 0.0;
        stats.diameter           = 0;
        stats.path_sample_sources = 0;
        return stats;
    }

    std::vector<std::int32_t> sources;
    if (static_cast<int>(members.size()) <= options.exact_path_limit) {
        sources = members;
        stats.path_sample_sources = 0;
    } else {
        // Deterministic partial Fisher-Yates over the member list.
        const int want = std::min<int>(options.sample_sources, static_cast<int>(members.size()));
        Rng rng(options.sample_seed);
        for (int i = 0; i < want; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                rng.uniform_below(members.size() - static_cast<std::size_t>(i));
            std::swap(members[static_cast<std::size_t>(i)], members[j]);
            sources.push_back(members[static_cast<std::size_t>(i)]);
        }
        stats.path_sample_sources = want;
    }

    long double dist_sum   = 0.0L;
    std::size_t pair_count = 0;
    int max_dist           = 0;
    std::vector<std::int32_t> dist(static_cast<std::size_t>(v_count));
    std::vector<std::int32_t> queue;
    queue.reserve(members.size());
    for (std::int32_t source : sources)
        bfs_accumulate(g, source, dist, queue, dist_sum, pair_count, max_dist);

    stats.avg_shortest_path = pair_count > 0 ? static_cast<double>(dist_sum / pair_count) : 0.0;
    stats.diameter          = max_dist;
    return stats;
}

Graph generate_synthetic(int v, int m, double triad_probability, std::uint64_t seed)
{
    if (m < 1 || m >= v)
        throw std::invalid_argument("generate_synthetic: need 1 <= m < v");
    if (!(triad_probability >= 0.0 && triad_probability <= 1.0))
        throw std::invalid_argument("generate_synthetic: triad_probability must be in [0,1]");

    std::vector<std::vector<std::int32_t>> adj(static_cast<std::size_t>(v));
    std::vector<std::pair<int, int>> edges;
    // One entry per edge endpoint: sampling from it is degree-proportional.
    std::vector<std::int32_t> endpoints;
    Rng rng(seed);

    auto linked = [&](int a, int b) {
        const auto& n = adj[static_cast<std::size_t>(a)];
        return std::find(n.begin(), n.end(), static_cast<std::int32_t>(b)) != n.end();
    };
    auto add_edge = [&](int a, int b) {
        adj[static_cast<std::size_t>(a)].push_back(static_cast<std::int32_t>(b));
        adj[static_cast<std::size_t>(b)].push_back(static_cast<std::int32_t>(a));
        edges.emplace_back(a, b);
        endpoints.push_back(static_cast<std::int32_t>(a));
        endpoints.push_back(static_cast<std::int32_t>(b));
    };

    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            add_edge(a, b);

    std::vector<std::int32_t> candidates;
    for (int u = m; u < v; ++u) {
        int prev_target = -1;
        for (int e = 0; e < m; ++e) {
            int target = -1;
            if (e > 0 && prev_target >= 0 && rng.uniform() < triad_probability) {
                // Triad step: close a triangle via a neighbor of the previous
                // target. Falls back to preferential attachment when every
                // such neighbor is already linked to u.
                candidates.clear();
                for (std::int32_t w : adj[static_cast<std::size_t>(prev_target)])
                    if (w != u && !linked(u, w))
                        candidates.push_back(w);
                if (!candidates.empty())
                    target = candidates[rng.uniform_below(candidates.size())];
            }
            while (target < 0) {
                const std::int32_t pick =
                    endpoints.empty()
                        ? static_cast<std::int32_t>(rng.uniform_below(static_cast<std::uint64_t>(u)))
                        : endpoints[rng.uniform_below(endpoints.size())];
                if (pick != u && !linked(u, pick))
                    target = pick;
            }
            add_edge(u, target);
            prev_target = target;
        }
    }
    return Graph::from_edges(v, edges);
}

} // namespace trojansim
