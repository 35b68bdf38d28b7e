#include "modfleet/reference.hpp"

#include <algorithm>
#include <functional>

namespace modfleet::reference {

double char_path_length(const netlab::Graph& g) {
    int n = g.node_count();
    const int kInf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    long long total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (d[i][j] >= kInf) throw std::domain_error("graph is disconnected");
            total += d[i][j];
        }
    return n < 2 ? 0.0
                 : static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

std::vector<long long> traffic_by_enumeration(const netlab::Graph& g) {
    int n = g.node_count();
    const int kInf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

    std::vector<long long> counts(n, 0);
    std::vector<int> path;
    // Walk every shortest s-t path; each interior node of each path counts.
    std::function<void(int, int)> descend = [&](int v, int t) {
        path.push_back(v);
        if (v == t) {
            for (size_t i = 1; i + 1 < path.size(); ++i) ++counts[path[i]];
        } else {
            for (int w : g.neighbors(v))
                if (d[path.front()][w] == static_cast<int>(path.size()) &&
                    d[w][t] + static_cast<int>(path.size()) == d[path.front()][t])
                    descend(w, t);
        }
        path.pop_back();
    };
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t) continue;
            if (d[s][t] >= kInf) throw std::domain_error("graph is disconnected");
            path.clear();
            descend(s, t);
        }
    return counts;
}

int longest_path_dfs(const netlab::Graph& g, int s, int t) {
    int best = -1;
    std::vector<char> used(g.node_count(), 0);
    std::function<void(int, int)> dfs = [&](int v, int hops) {
        if (v == t) {
            best = std::max(best, hops);
            return;
        }
        used[v] = 1;
        for (int w : g.neighbors(v))
            if (!used[w]) dfs(w, hops + 1);
        used[v] = 0;
    };
    dfs(s, 0);
    return best;
}

std::vector<std::vector<int>> all_simple_paths(const netlab::Graph& g, int s, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::vector<char> used(g.node_count(), 0);
    std::function<void(int)> dfs = [&](int v) {
        path.push_back(v);
        if (v == t) {
            out.push_back(path);
        } else {
            used[v] = 1;
            for (int w : g.neighbors(v))
                if (!used[w]) dfs(w);
            used[v] = 0;
        }
        path.pop_back();
    };
    dfs(s);
    return out;
}

std::optional<moea::Individual> best_mix_by_enumeration(
    const scengen::Scenario& scenario, const fleet::FleetCatalog& cat,
    const dispatch::DispatchConfig& dcfg, long long max_count) {
    std::vector<std::string> keys;
    for (const auto& vt : cat.vehicle_types) keys.push_back(vt.id);
    for (const auto& mt : cat.module_types) keys.push_back(mt.id);

    std::optional<moea::Individual> best;
    std::vector<long long> counts(keys.size(), 0);
    size_t vehicle_keys = cat.vehicle_types.size();
    while (true) {
        fleet::FleetMix mix = fleet::FleetMix::zero(cat);
        for (size_t i = 0; i < keys.size(); ++i) {
            if (i < vehicle_keys)
                mix.vehicle_counts[keys[i]] = counts[i];
            else
                mix.module_counts[keys[i]] = counts[i];
        }
        auto res = dispatch::simulate(scenario, mix, cat, dcfg);
        if (res.feasible) {
            moea::Individual ind;
            ind.mix = mix;
            ind.objectives.F = res.objective_F;
            ind.objectives.diversity = fleet::diversity(mix);
            ind.objectives.lane = fleet::lane_meters(mix, cat);
            ind.feasible = true;
            if (!best || moea::objective_order(ind, *best)) best = std::move(ind);
        }
        // odometer increment
        size_t pos = 0;
        while (pos < counts.size() && ++counts[pos] > max_count) counts[pos++] = 0;
        if (pos == counts.size()) break;
    }
    return best;
}

netlab::Graph random_connected_graph(int n, Rng& rng, double extra_edge_prob) {
    std::vector<std::pair<int, int>> tree;
    // Random spanning tree: attach each node to a random earlier one.
    for (int v = 1; v < n; ++v)
        tree.emplace_back(static_cast<int>(rng.uniform_int(0, v - 1)), v);
    std::sort(tree.begin(), tree.end());
    std::vector<std::pair<int, int>> edges = tree;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (std::binary_search(tree.begin(), tree.end(), std::pair{u, v}))
                continue;
            if (rng.bernoulli(extra_edge_prob)) edges.emplace_back(u, v);
        }
    return netlab::Graph(n, edges);
}

} // namespace modfleet::reference
