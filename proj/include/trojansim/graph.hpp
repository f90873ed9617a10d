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
#ifndef TROJANSIM_GRAPH_HPP
#define TROJANSIM_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trojansim {

// Immutable undirected simple graph in compressed adjacency form.
// Invariants: node ids are dense 0..V-1; adjacency is symmetric and sorted;
// no self-loops, no duplicate edges; sum of degrees equals 2E.
class Graph
{
public:
    // Builds from an edge list. Self-loops and duplicates are rejected here;
    // use load_edge_list for tolerant parsing of external files.
    static Graph from_edges(int node_count, const std::vector<std::pair<int, int>>& edges);

    int node_count() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

    int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

    std::span<const std::int32_t> neighbors(int v) const
    {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    bool has_edge(int u, int v) const;

    // Original label of dense node id v. Identity unless the loader remapped.
    std::int64_t original_id(int v) const { return original_ids_[v]; }

private:
    Graph() = default;

    std::vector<std::size_t> offsets_;      // size V+1
    std::vector<std::int32_t> adjacency_;   // size 2E, sorted within each node
    std::vector<std::int64_t> original_ids_;

    friend Graph load_edge_list(std::istream&, struct EdgeListStats*);
};

// Raised on malformed edge-list input; line is 1-based.
struct ParseError : std::runtime_error
{
    ParseError(const std::string& what, std::size_t line_arg) : std::runtime_error(what), line(line_arg) {}
    std::size_t line;
};

struct EdgeListStats
{
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged  = 0;
};

// Parses whitespace-separated node-id pairs, one edge per line. Lines starting
// with '#' and blank lines are skipped. Node labels may be arbitrary integers;
// they are remapped to dense ids in order of first appearance (the remapping is
// retained, see Graph::original_id). Self-loops are dropped and duplicate edges
// merged, both counted in `stats` when given.
// Throws ParseError (with the offending line number) on malformed tokens and
// std::invalid_argument if no edges remain.
Graph load_edge_list(std::istream& in, EdgeListStats* stats = nullptr);
Graph load_edge_list_file(const std::string& path, EdgeListStats* stats = nullptr);

// Writes one "u v" line per edge, each edge once, endpoints in dense-id form.
// load_edge_list(save_edge_list(g)) reproduces g's edge set exactly; nodes
// without edges are lost, since the format cannot express them.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

// Local clustering coefficient 2f / (k(k-1)) where f counts edges among the
// neighbors of v. Zero for degree < 2.
double clustering_coefficient(const Graph& g, int v);

struct GraphStats
{
    int node_count            = 0;
    std::size_t edge_count    = 0;
    double avg_clustering     = 0.0;
    double avg_shortest_path  = 0.0;
    int diameter              = 0;
    int max_degree            = 0;
    double avg_degree         = 0.0;
    double log_ratio          = 0.0; // log(V) / log(avg_degree)
    double powerlaw_alpha     = 0.0; // least-squares CCDF exponent
    bool connected            = true;
    int largest_component     = 0;  // node count of the largest component
    int path_sample_sources   = 0;  // 0 when path statistics are exact
};

struct StatsOptions
{
    // All-pairs BFS is exact up to this many nodes; beyond it, path statistics
    // are estimated from `sample_sources` BFS sources chosen by `sample_seed`.
    int exact_path_limit       = 10000;
    int sample_sources         = 1000;
    std::uint64_t sample_seed  = 0x5eed;
};

// Degree, clustering, and shortest-path statistics. Path statistics cover the
// largest connected component; `connected` flags whether that is the whole
// graph. Sampled mode reports the source count it used in path_sample_sources.
GraphStats graph_stats(const Graph& g, const StatsOptions& options = {});

// Random graph with preferential attachment plus triad formation: new nodes
// attach m edges, each subsequent edge following a random neighbor of the
// previous target with probability triad_probability (closing a triangle) and
// attaching preferentially otherwise. Seeded with a complete graph on m nodes.
// Same arguments and seed give the same graph. Requires 1 <= m < v and
// triad_probability in [0,1]; throws std::invalid_argument otherwise.
Graph generate_synthetic(int v, int m, double triad_probability, std::uint64_t seed);

} // namespace trojansim

#endif
