#include "modfleet/netlab.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <json.hpp>

namespace modfleet::netlab {

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges)
    : node_count_(node_count) {
    if (node_count < 1) throw std::invalid_argument("graph needs at least one node");
    std::set<std::pair<int, int>> canon;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        if (u > v) std::swap(u, v);
        if (!canon.insert({u, v}).second)
            throw std::invalid_argument("duplicate edge");
    }
    edges_.assign(canon.begin(), canon.end());
    adj_.assign(node_count, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
}

bool Graph::is_connected() const {
    if (node_count_ == 0) return false;
    std::vector<char> seen(node_count_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                queue.push_back(w);
            }
    }
    return count == node_count_;
}

std::string Graph::to_json() const {
    nlohmann::json j;
    j["nodes"] = node_count_;
    auto edges = nlohmann::json::array();
    for (auto [u, v] : edges_) edges.push_back({u, v});
    j["edges"] = edges;
    return j.dump();
}

Graph Graph::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int n = j.at("nodes").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph(n, edges);
}

Graph ring(int n) {
    if (n < 3) throw std::invalid_argument("ring needs at least 3 nodes");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n);
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

Graph morph_with(const Graph& g, int a, int b) {
    int n = g.node_count();
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
        throw std::invalid_argument("morph needs two distinct in-range nodes");
    std::set<std::pair<int, int>> edges;
    auto add = [&edges](int u, int v) {
        if (u == v) return; // self-loop from the transfer, drop
        if (u > v) std::swap(u, v);
        edges.insert({u, v}); // set also drops duplicates
    };
    for (auto [u, v] : g.edges())
        if (u != a && v != a) add(u, v); // links of A removed
    for (int w : g.neighbors(a)) add(b, w); // links of A transferred to B
    add(a, b);
    return Graph(n, {edges.begin(), edges.end()});
}

MorphResult morph(const Graph& g, Rng& rng, const std::vector<int>& bias) {
    int n = g.node_count();
    if (n < 3) throw std::invalid_argument("morph needs at least 3 nodes");
    int a, b;
    if (!bias.empty()) {
        b = bias[rng.uniform_int(0, static_cast<long long>(bias.size()) - 1)];
        a = static_cast<int>(rng.uniform_int(0, n - 2));
        if (a >= b) ++a;
    } else {
        a = static_cast<int>(rng.uniform_int(0, n - 1));
        b = static_cast<int>(rng.uniform_int(0, n - 2));
        if (b >= a) ++b;
    }
    return {morph_with(g, a, b), a, b};
}

Graph small_world_1(int n, Rng& rng) {
    return morph(ring(n), rng).graph;
}

Graph small_world_2(int n, Rng& rng, double reuse_as_a) {
    MorphResult first = morph(ring(n), rng);
    const Graph& g1 = first.graph;
    int a, b;
    if (rng.bernoulli(reuse_as_a)) {
        a = first.b;
        b = static_cast<int>(rng.uniform_int(0, n - 2));
        if (b >= a) ++b;
    } else {
        b = first.b;
        a = static_cast<int>(rng.uniform_int(0, n - 2));
        if (a >= b) ++a;
    }
    return morph_with(g1, a, b);
}

std::vector<std::vector<int>> all_pairs_shortest_hops(const Graph& g) {
    int n = g.node_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v))
                if (dist[s][w] < 0) {
                    dist[s][w] = dist[s][v] + 1;
                    queue.push_back(w);
                }
        }
    }
    return dist;
}

double char_path_length(const Graph& g) {
    if (!g.is_connected()) throw std::domain_error("graph is disconnected");
    int n = g.node_count();
    if (n < 2) return 0.0;
    auto dist = all_pairs_shortest_hops(g);
    long long total = 0;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (s != t) total += dist[s][t];
    return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

NetworkMetrics traffic(const Graph& g) {
    if (!g.is_connected()) throw std::domain_error("graph is disconnected");
    int n = g.node_count();
    auto dist = all_pairs_shortest_hops(g);

    // sigma[s][t]: number of distinct shortest s-t paths (BFS path counting).
    std::vector<std::vector<long long>> sigma(n, std::vector<long long>(n, 0));
    for (int s = 0; s < n; ++s) {
        sigma[s][s] = 1;
        // Relax in increasing distance order.
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return dist[s][x] < dist[s][y]; });
        for (int v : order) {
            if (v == s) continue;
            long long count = 0;
            for (int w : g.neighbors(v))
                if (dist[s][w] + 1 == dist[s][v]) count += sigma[s][w];
            sigma[s][v] = count;
        }
    }

    NetworkMetrics m;
    m.per_node_traffic.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        long long total = 0;
        for (int s = 0; s < n; ++s) {
            if (s == v) continue;
            for (int t = 0; t < n; ++t) {
                if (t == s || t == v) continue;
                if (dist[s][v] + dist[v][t] == dist[s][t])
                    total += sigma[s][v] * sigma[v][t];
            }
        }
        m.per_node_traffic[v] = total;
    }
    long long sum = 0;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (s != t) sum += dist[s][t];
    m.char_path_length =
        n < 2 ? 0.0 : static_cast<double>(sum) / (static_cast<double>(n) * (n - 1));
    m.max_traffic = static_cast<double>(
        *std::max_element(m.per_node_traffic.begin(), m.per_node_traffic.end()));
    return m;
}

namespace {

void check_path_query(const Graph& g, int s, int t) {
    if (s == t) throw std::invalid_argument("origin equals destination");
    if (s < 0 || t < 0 || s >= g.node_count() || t >= g.node_count())
        throw std::invalid_argument("node out of range");
    if (g.node_count() > kMaxExhaustiveNodes)
        throw std::length_error("exhaustive path search is capped at 16 nodes");
}

// Longest simple path to `target` from `v`, over nodes not in `used`
// (which includes v). -1 when target is unreachable. Memoised per target.
int longest_from(const Graph& g, int target, int v, unsigned used,
                 std::vector<signed char>& memo) {
    if (v == target) return 0;
    signed char& slot = memo[(static_cast<size_t>(v) << g.node_count()) | used];
    if (slot != -2) return slot;
    int best = -1;
    for (int w : g.neighbors(v)) {
        if (used & (1u << w)) continue;
        int sub = longest_from(g, target, w, used | (1u << w), memo);
        if (sub >= 0 && sub + 1 > best) best = sub + 1;
    }
    slot = static_cast<signed char>(best);
    return best;
}

} // namespace

int longest_route_hops(const Graph& g, int s, int t) {
    check_path_query(g, s, t);
    int n = g.node_count();
    std::vector<signed char> memo(static_cast<size_t>(n) << n, -2);
    int best = longest_from(g, t, s, 1u << s, memo);
    if (best < 0) throw std::domain_error("no path between nodes");
    return best;
}

std::vector<std::vector<int>> all_pairs_longest_hops(const Graph& g) {
    int n = g.node_count();
    if (n > kMaxExhaustiveNodes)
        throw std::length_error("exhaustive path search is capped at 16 nodes");
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    std::vector<signed char> memo;
    for (int t = 0; t < n; ++t) {
        memo.assign(static_cast<size_t>(n) << n, -2);
        for (int s = 0; s < n; ++s) {
            if (s == t) continue;
            out[s][t] = longest_from(g, t, s, 1u << s, memo);
        }
    }
    return out;
}

std::vector<std::vector<int>> route_candidates(const Graph& g, int s, int t) {
    check_path_query(g, s, t);
    std::vector<std::vector<int>> paths;
    std::vector<int> current{s};
    unsigned used = 1u << s;

    // Iterative DFS over partial paths.
    struct Frame {
        int node;
        size_t next_idx;
    };
    std::vector<Frame> stack{{s, 0}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        const auto& nb = g.neighbors(top.node);
        if (top.next_idx >= nb.size()) {
            used &= ~(1u << top.node);
            current.pop_back();
            stack.pop_back();
            continue;
        }
        int w = nb[top.next_idx++];
        if (w == t) {
            current.push_back(t);
            paths.push_back(current);
            current.pop_back();
            continue;
        }
        if (used & (1u << w)) continue;
        used |= 1u << w;
        current.push_back(w);
        stack.push_back({w, 0});
    }
    std::sort(paths.begin(), paths.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() < y.size();
                  return x < y;
              });
    return paths;
}

} // namespace modfleet::netlab
