#ifndef MODFLEET_REFERENCE_HPP
#define MODFLEET_REFERENCE_HPP

#include <optional>
#include <vector>

#include "modfleet/moea.hpp"
#include "modfleet/netlab.hpp"
#include "modfleet/rng.hpp"

// Serial brute-force reference implementations. These deliberately take a
// different algorithmic route than the fast paths (explicit enumeration
// instead of counting, Floyd-Warshall instead of BFS) and exist as oracles
// for the test and benchmark targets. Keep them independent of netlab's
// internals.
namespace modfleet::reference {

// Mean shortest-path hop distance via Floyd-Warshall.
double char_path_length(const netlab::Graph& g);

// Per-node traffic by explicitly enumerating every shortest path of every
// ordered pair and walking its interior nodes.
std::vector<long long> traffic_by_enumeration(const netlab::Graph& g);

// Longest simple path by plain DFS, no memoisation.
int longest_path_dfs(const netlab::Graph& g, int s, int t);

// Every simple s-t path by plain recursion, unsorted.
std::vector<std::vector<int>> all_simple_paths(const netlab::Graph& g, int s, int t);

// Random connected simple graph: a random spanning tree plus each remaining
// edge independently with probability extra_edge_prob.
netlab::Graph random_connected_graph(int n, Rng& rng, double extra_edge_prob);

// Exhaustive fleet-mix search: every count vector with entries in
// [0, max_count], simulated as-is (default homes). Returns the feasible mix
// minimising (F, lane, diversity, serialized mix), or nullopt when none is
// feasible. Exponential in the number of catalog types; tiny scenarios only.
std::optional<moea::Individual> best_mix_by_enumeration(
    const scengen::Scenario& scenario, const fleet::FleetCatalog& cat,
    const dispatch::DispatchConfig& dcfg, long long max_count);

} // namespace modfleet::reference

#endif
