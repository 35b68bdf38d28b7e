#include <doctest.h>

#include <algorithm>
#include <set>

#include "modfleet/netlab.hpp"
#include "modfleet/reference.hpp"

using namespace modfleet;
using netlab::Graph;

namespace {

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

} // namespace

TEST_CASE("ring constructor") {
    auto g = netlab::ring(10);
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 10);
    for (int v = 0; v < 10; ++v) CHECK(g.degree(v) == 2);

    auto triangle = netlab::ring(3);
    CHECK(netlab::char_path_length(triangle) == doctest::Approx(1.0));

    CHECK_THROWS_AS(netlab::ring(2), std::invalid_argument);
}

TEST_CASE("char_path_length oracle values") {
    // ring(4): per-node distances {1,2,1}, mean 4/3.
    CHECK(netlab::char_path_length(netlab::ring(4)) == doctest::Approx(4.0 / 3.0));

    // Table value: ring(10) has L = 25/9.
    CHECK(netlab::char_path_length(netlab::ring(10)) == doctest::Approx(25.0 / 9.0));

    // K5: every pair adjacent.
    CHECK(netlab::char_path_length(complete_graph(5)) == doctest::Approx(1.0));

    // Path on 3 nodes: ordered-pair distances 1,1,1,1,2,2.
    Graph path3(3, {{0, 1}, {1, 2}});
    CHECK(netlab::char_path_length(path3) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("char_path_length closed form for even rings") {
    for (int n : {4, 6, 8, 10, 12}) {
        double expected = (n * n / 4.0) / (n - 1);
        CHECK(netlab::char_path_length(netlab::ring(n)) == doctest::Approx(expected));
    }
}

TEST_CASE("char_path_length rejects disconnected graphs") {
    Graph two_parts(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(netlab::char_path_length(two_parts), std::domain_error);
    CHECK_THROWS_AS(netlab::traffic(two_parts), std::domain_error);
}

TEST_CASE("traffic on ring(10) reproduces B = 20 at every node") {
    auto m = netlab::traffic(netlab::ring(10));
    CHECK(m.max_traffic == doctest::Approx(20.0));
    for (long long c : m.per_node_traffic) CHECK(c == 20);
    CHECK(m.char_path_length == doctest::Approx(25.0 / 9.0));
}

TEST_CASE("traffic trivial cases") {
    // Complete graph: no shortest path has an interior node.
    auto m = netlab::traffic(complete_graph(6));
    CHECK(m.max_traffic == doctest::Approx(0.0));

    // Star with 4 leaves: 4*3 ordered leaf pairs cross the centre.
    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto sm = netlab::traffic(star);
    CHECK(sm.per_node_traffic[0] == 12);
    CHECK(sm.max_traffic == doctest::Approx(12.0));
    for (int leaf = 1; leaf <= 4; ++leaf) CHECK(sm.per_node_traffic[leaf] == 0);
}

TEST_CASE("traffic and L match brute-force enumeration on random graphs") {
    Rng rng(20240601);
    for (int iter = 0; iter < 60; ++iter) {
        int n = static_cast<int>(rng.uniform_int(3, 10));
        auto g = reference::random_connected_graph(n, rng, 0.25);
        REQUIRE(g.is_connected());
        auto fast = netlab::traffic(g);
        auto slow = reference::traffic_by_enumeration(g);
        CHECK(fast.per_node_traffic == slow);
        CHECK(netlab::char_path_length(g) ==
              doctest::Approx(reference::char_path_length(g)).epsilon(1e-12));
    }
}

TEST_CASE("morph hand trace: ring(10) with A=0, B=5") {
    auto g = netlab::morph_with(netlab::ring(10), 0, 5);
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 11);
    CHECK(g.degree(0) == 1);
    CHECK(g.has_edge(0, 5));
    std::vector<int> expected{0, 1, 4, 6, 9};
    CHECK(g.neighbors(5) == expected);
    CHECK(g.is_connected());
}

TEST_CASE("morph hand trace: adjacent nodes drop the transferred self-loop") {
    auto g = netlab::morph_with(netlab::ring(10), 0, 1);
    CHECK(g.edge_count() == 10);
    std::vector<int> expected{0, 2, 9};
    CHECK(g.neighbors(1) == expected);
    CHECK(g.is_connected());
}

TEST_CASE("morph structural properties on random graphs") {
    Rng rng(7);
    for (int iter = 0; iter < 80; ++iter) {
        int n = static_cast<int>(rng.uniform_int(3, 12));
        auto g = reference::random_connected_graph(n, rng, 0.2);
        auto old_a_neighbors = [&](int a) {
            return std::set<int>(g.neighbors(a).begin(), g.neighbors(a).end());
        };
        auto res = netlab::morph(g, rng);
        CHECK(res.graph.node_count() == n);
        CHECK(res.graph.is_connected());
        CHECK(res.graph.degree(res.a) == 1);
        CHECK(res.graph.has_edge(res.a, res.b));
        // B inherits every old neighbour of A except itself.
        for (int w : old_a_neighbors(res.a))
            if (w != res.b) CHECK(res.graph.has_edge(res.b, w));
    }
}

TEST_CASE("morph bias set restricts the B choice") {
    Rng rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        auto res = netlab::morph(netlab::ring(10), rng, {4});
        CHECK(res.b == 4);
        CHECK(res.a != 4);
    }
}

TEST_CASE("longest_route_hops") {
    auto ring10 = netlab::ring(10);
    CHECK(netlab::longest_route_hops(ring10, 0, 1) == 9);
    CHECK(netlab::longest_route_hops(complete_graph(3), 0, 1) == 2);

    // Morphed graph against the plain-DFS oracle.
    auto morphed = netlab::morph_with(ring10, 0, 5);
    CHECK(netlab::longest_route_hops(morphed, 0, 5) ==
          reference::longest_path_dfs(morphed, 0, 5));

    Rng rng(31415);
    for (int iter = 0; iter < 30; ++iter) {
        int n = static_cast<int>(rng.uniform_int(4, 9));
        auto g = reference::random_connected_graph(n, rng, 0.3);
        int s = static_cast<int>(rng.uniform_int(0, n - 1));
        int t = static_cast<int>(rng.uniform_int(0, n - 2));
        if (t >= s) ++t;
        CHECK(netlab::longest_route_hops(g, s, t) == reference::longest_path_dfs(g, s, t));
    }

    CHECK_THROWS_AS(netlab::longest_route_hops(ring10, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(netlab::longest_route_hops(netlab::ring(17), 0, 1),
                    std::length_error);
}

TEST_CASE("all_pairs_longest_hops agrees with the single-pair query") {
    auto g = netlab::morph_with(netlab::ring(8), 1, 4);
    auto table = netlab::all_pairs_longest_hops(g);
    for (int s = 0; s < 8; ++s)
        for (int t = 0; t < 8; ++t) {
            if (s == t) continue;
            CHECK(table[s][t] == netlab::longest_route_hops(g, s, t));
        }
}

TEST_CASE("route_candidates ordering and coverage") {
    auto ring10 = netlab::ring(10);
    auto cands = netlab::route_candidates(ring10, 0, 1);
    REQUIRE(cands.size() == 2);
    CHECK(cands.front().size() == 2);  // 1 hop
    CHECK(cands.back().size() == 10);  // 9 hops

    auto k3 = complete_graph(3);
    auto k3_paths = netlab::route_candidates(k3, 0, 1);
    REQUIRE(k3_paths.size() == 2);
    CHECK(k3_paths[0] == std::vector<int>{0, 1});
    CHECK(k3_paths[1] == std::vector<int>{0, 2, 1});

    // Candidate count matches brute-force path enumeration on morphed graphs.
    Rng rng(55);
    for (int iter = 0; iter < 20; ++iter) {
        auto res = netlab::morph(netlab::ring(8), rng);
        int s = static_cast<int>(rng.uniform_int(0, 7));
        int t = static_cast<int>(rng.uniform_int(0, 6));
        if (t >= s) ++t;
        auto fast = netlab::route_candidates(res.graph, s, t);
        auto slow = reference::all_simple_paths(res.graph, s, t);
        CHECK(fast.size() == slow.size());
        // Sorted ascending by hops; ends span shortest..longest.
        for (size_t i = 1; i < fast.size(); ++i)
            CHECK(fast[i - 1].size() <= fast[i].size());
        if (!fast.empty()) {
            auto dist = netlab::all_pairs_shortest_hops(res.graph);
            CHECK(static_cast<int>(fast.front().size()) - 1 == dist[s][t]);
            CHECK(static_cast<int>(fast.back().size()) - 1 ==
                  netlab::longest_route_hops(res.graph, s, t));
        }
    }
}

TEST_CASE("graph json round trip is canonical") {
    auto g = netlab::morph_with(netlab::ring(6), 2, 5);
    auto text = g.to_json();
    auto back = Graph::from_json(text);
    CHECK(back == g);
    CHECK(back.to_json() == text);

    CHECK_THROWS_AS(Graph::from_json(R"({"nodes":3,"edges":[[0,0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_json(R"({"nodes":3,"edges":[[0,1],[1,0]]})"),
                    std::invalid_argument);
}

TEST_CASE("small world generators keep node count and connectivity") {
    Rng rng(123);
    for (int iter = 0; iter < 50; ++iter) {
        auto g1 = netlab::small_world_1(10, rng);
        CHECK(g1.node_count() == 10);
        CHECK(g1.is_connected());
        auto g2 = netlab::small_world_2(10, rng);
        CHECK(g2.node_count() == 10);
        CHECK(g2.is_connected());
    }
}
