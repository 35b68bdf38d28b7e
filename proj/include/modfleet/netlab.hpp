#ifndef MODFLEET_NETLAB_HPP
#define MODFLEET_NETLAB_HPP

#include <string>
#include <utility>
#include <vector>

#include "modfleet/common.hpp"
#include "modfleet/rng.hpp"

namespace modfleet::netlab {

// Undirected simple graph with unit-hop edges. Node ids are 0..n-1.
class Graph {
  public:
    Graph() = default;

    // Builds from an edge list; rejects self-loops, duplicates and
    // out-of-range endpoints.
    Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // Sorted neighbour list.
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    bool has_edge(int u, int v) const;
    bool is_connected() const;

    // Canonical edge list: u < v, lexicographically sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::string to_json() const;
    static Graph from_json(const std::string& text);

    bool operator==(const Graph& other) const {
        return node_count_ == other.node_count_ && edges_ == other.edges_;
    }

  private:
    int node_count_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

struct NetworkMetrics {
    double char_path_length = 0.0;              // mean hop distance, ordered pairs
    double max_traffic = 0.0;                   // max of per_node_traffic
    std::vector<long long> per_node_traffic;    // indexed by node id
};

struct MorphResult {
    Graph graph;
    int a = -1;
    int b = -1;
};

// Cycle graph on n >= 3 nodes.
Graph ring(int n);

// Topology morph with explicit node choice:
//   - all links of A transfer to B (self-loops / duplicates dropped)
//   - links are removed from A
//   - a link A-B is added
// Connectivity and node count are preserved.
Graph morph_with(const Graph& g, int a, int b);

// Random morph. Without a bias set, A then B are drawn uniformly without
// replacement. With a bias set, B is drawn uniformly from it and A uniformly
// from the remaining nodes.
MorphResult morph(const Graph& g, Rng& rng, const std::vector<int>& bias = {});

// One morph applied to a ring.
Graph small_world_1(int n, Rng& rng);

// Two morphs; the first morph's B re-enters the second as its A or its B with
// probability `reuse_as_a` / 1 - `reuse_as_a` (default 50/50).
Graph small_world_2(int n, Rng& rng, double reuse_as_a = 0.5);

// Mean shortest-path hop distance over ordered pairs of distinct nodes.
// Throws std::domain_error on a disconnected graph.
double char_path_length(const Graph& g);

// Shortest-path traffic per node: for every ordered pair (s, t) each tied
// shortest path counts separately, and a path contributes to every interior
// node it crosses. Endpoints are excluded.
NetworkMetrics traffic(const Graph& g);

// Networks are capped at this many nodes: the exhaustive path routines are
// exponential beyond it.
inline constexpr int kMaxExhaustiveNodes = 16;

// Hop count of the longest simple s-t path (exhaustive, memoised on visited
// sets). Throws std::invalid_argument if s == t, std::length_error if the
// graph exceeds kMaxExhaustiveNodes.
int longest_route_hops(const Graph& g, int s, int t);

// longest_route_hops for every ordered pair at once.
std::vector<std::vector<int>> all_pairs_longest_hops(const Graph& g);

// All-pairs shortest hop distances (BFS per source). -1 for unreachable.
std::vector<std::vector<int>> all_pairs_shortest_hops(const Graph& g);

// Every simple s-t path, sorted ascending by hop count, ties by
// lexicographic node sequence. Errors as for longest_route_hops.
std::vector<std::vector<int>> route_candidates(const Graph& g, int s, int t);

} // namespace modfleet::netlab

#endif
