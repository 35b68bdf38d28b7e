#include <doctest.h>

#include <algorithm>
#include <map>

#include "modfleet/dispatch.hpp"
#include "modfleet/reference.hpp"
#include "modfleet/rng.hpp"

using namespace modfleet;
using namespace modfleet::dispatch;

namespace {

scengen::Task make_task(int id, int origin, int dest, Minutes start, Minutes duration,
                        Minutes flexibility = 0, TaskType type = TaskType::type1,
                        TaskSize size = TaskSize::medium) {
    scengen::Task t;
    t.id = id;
    t.type = type;
    t.size = size;
    t.origin = origin;
    t.destination = dest;
    t.earliest_start = start;
    t.duration = duration;
    t.flexibility = flexibility;
    return t;
}

scengen::Scenario ring_scenario(std::vector<scengen::Task> tasks, int nodes = 10) {
    scengen::Scenario s;
    s.graph = netlab::ring(nodes);
    s.config = scengen::ScenarioConfig{};
    std::sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) {
        return a.earliest_start < b.earliest_start;
    });
    s.tasks = std::move(tasks);
    return s;
}

Minutes ring_duration(int nodes, int origin, int dest, Minutes edge = 30) {
    int d = std::abs(origin - dest);
    int shortest = std::min(d, nodes - d);
    return static_cast<Minutes>(nodes - shortest) * edge;
}

// Brute-force window count over a raw timestamp list.
long long window_count(const std::vector<Minutes>& stamps, Minutes now, Minutes y) {
    long long c = 0;
    for (Minutes t : stamps)
        if (t > now - y && t <= now) ++c;
    return c;
}

} // namespace

TEST_CASE("traffic log window counting") {
    TrafficLog log(3);
    std::vector<Minutes> stamps{5, 15, 25};
    for (Minutes t : stamps) log.record(1, t);

    // Out-of-order inserts keep the log sorted.
    TrafficLog log2(3);
    log2.record(1, 25);
    log2.record(1, 5);
    log2.record(1, 15);
    CHECK(log2.crossings(1) == std::vector<Minutes>{5, 15, 25});

    for (Minutes now : {0, 10, 20, 30, 40})
        for (Minutes y : {0, 5, 12, 100})
            CHECK(log.count_in_window(1, now, y) == window_count(stamps, now, y));

    // The half-open window (now-y, now]: at now=30, y=12 only t=25 counts.
    CHECK(log.count_in_window(1, 30, 12) == 1);
}

TEST_CASE("route_penalty") {
    TrafficLog log(3);
    SUBCASE("y = 0 disables the penalty") {
        log.record(0, 1);
        CHECK(route_penalty({0, 1, 2}, log, 10, 0, 1.0) == doctest::Approx(0.0));
    }
    SUBCASE("max count along the route times rate times cost") {
        // counts {3, 7, 2} along nodes 0,1,2
        for (int i = 0; i < 3; ++i) log.record(0, 5);
        for (int i = 0; i < 7; ++i) log.record(1, 5);
        for (int i = 0; i < 2; ++i) log.record(2, 5);
        CHECK(route_penalty({0, 1, 2}, log, 10, 60, 1.0, 0.001) == doctest::Approx(0.007));
    }
}

TEST_CASE("select_route") {
    DispatchConfig cfg;
    TrafficLog log(5);

    // Candidates over a 5-node graph: two 2-hop routes and one 3-hop route.
    std::vector<std::vector<int>> cands{{0, 1, 2}, {0, 3, 2}, {0, 3, 4, 2}};

    SUBCASE("y = 0 picks the shortest candidate") {
        RouteQuery q{0, 0, 30, 5, 1000};
        auto choice = select_route(cands, q, log, 1.0, cfg);
        REQUIRE(choice);
        CHECK(choice->candidate_index == 0);
        CHECK(choice->penalty == doctest::Approx(0.0));
    }

    SUBCASE("equal-time candidates: the cold route wins") {
        cfg.penalty_window_y_min = 60;
        for (int i = 0; i < 9; ++i) log.record(1, 10); // node 1 runs hot
        RouteQuery q{20, 20, 30, 5, 1000};
        auto choice = select_route(cands, q, log, 1.0, cfg);
        REQUIRE(choice);
        CHECK(choice->candidate_index == 1);
        CHECK(choice->penalty == doctest::Approx(0.0));
    }

    SUBCASE("only the longest route avoids the hot nodes") {
        cfg.penalty_window_y_min = 60;
        for (int i = 0; i < 9; ++i) log.record(1, 10);
        for (int i = 0; i < 6; ++i) log.record(3, 10);
        // Node 4 stays cold; only {0,3,4,2} avoids... node 3 is on it too, so
        // craft a清 clean long route: {0,4,2}? keep it simple with 3 candidates:
        // long route penalty = count(3)=6 -> 0.006 vs short routes 0.009/0.006.
        RouteQuery q{20, 20, 30, 5, 1000};
        auto choice = select_route(cands, q, log, 1.0, cfg);
        REQUIRE(choice);
        // Ties between 0.006 candidates resolve to the earlier: {0,3,2}.
        CHECK(choice->candidate_index == 1);

        // Make every short route strictly hotter than the long one.
        for (int i = 0; i < 4; ++i) log.record(3, 15);
        // now counts: node1=9, node3=10 -> short routes 0.009/0.010, long 0.010?
        // Long route crosses 3 as well; cool alternative needed: check window
        // admission of the longest instead.
        RouteQuery tight{20, 20, 30, 5, 20 + 2 * 5 + 60};
        auto c2 = select_route(cands, tight, log, 1.0, cfg);
        REQUIRE(c2);
        CHECK(c2->candidate_index < 2); // 3-hop route no longer fits the window
    }

    SUBCASE("window-infeasible candidates are rejected") {
        RouteQuery q{0, 0, 30, 30, 100}; // budget 100-60 = 40 < 60 travel
        CHECK_FALSE(select_route(cands, q, log, 1.0, cfg));
    }
}

TEST_CASE("longest admissible route is chosen when it alone is cold") {
    DispatchConfig cfg;
    cfg.penalty_window_y_min = 120;
    TrafficLog log(5);
    std::vector<std::vector<int>> cands{{0, 1, 2}, {0, 3, 4, 2}};
    for (int i = 0; i < 9; ++i) log.record(1, 50);
    RouteQuery q{60, 60, 30, 5, 10000};
    auto choice = select_route(cands, q, log, 1.0, cfg);
    REQUIRE(choice);
    CHECK(choice->candidate_index == 1);
    CHECK(choice->penalty == doctest::Approx(0.0));
}

TEST_CASE("simulate: single task, vehicle stationed at origin") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto mix = fleet::FleetMix::zero(cat);
    mix.vehicle_counts["medium_type1"] = 1;
    mix.stations["medium_type1"] = {0};

    auto s = ring_scenario({make_task(0, 0, 3, 10, ring_duration(10, 0, 3))});
    DispatchConfig cfg;
    auto res = simulate(s, mix, cat, cfg);

    REQUIRE(res.feasible);
    REQUIRE(res.per_task.size() == 1);
    // completion = earliest_start + 2 * waiting + shortest route time
    CHECK(res.per_task[0].start == 10);
    CHECK(res.per_task[0].completion == 10 + 2 * 30 + 3 * 30);
    CHECK(res.per_task[0].route == std::vector<int>{0, 1, 2, 3});
    CHECK(res.objective_F == doctest::Approx(1.0));
    CHECK(res.traffic_penalty_total == doctest::Approx(0.0));
}

TEST_CASE("simulate: heavy vehicle bundles two medium tasks") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto mix = fleet::FleetMix::zero(cat);
    mix.vehicle_counts["heavy_type1"] = 1;
    mix.stations["heavy_type1"] = {0};

    auto dur = ring_duration(10, 0, 2);
    auto s = ring_scenario({make_task(0, 0, 2, 0, dur), make_task(1, 0, 2, 0, dur)});
    DispatchConfig cfg;
    auto res = simulate(s, mix, cat, cfg);

    REQUIRE(res.feasible);
    CHECK(res.trips.size() == 1);
    CHECK(res.trips[0].task_ids.size() == 2);
    CHECK(res.per_task[0].completion == res.per_task[1].completion);
}

TEST_CASE("simulate: medium vehicle cannot bundle") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto mix = fleet::FleetMix::zero(cat);
    mix.vehicle_counts["medium_type1"] = 1;
    mix.stations["medium_type1"] = {0};

    auto dur = ring_duration(10, 0, 2);
    // Generous flexibility so both fit sequentially.
    auto s = ring_scenario(
        {make_task(0, 0, 2, 0, dur, 1000), make_task(1, 0, 2, 0, dur, 1000)});
    DispatchConfig cfg;
    auto res = simulate(s, mix, cat, cfg);
    REQUIRE(res.feasible);
    CHECK(res.trips.size() == 2);
}

TEST_CASE("simulate: empty fleet leaves every task unserved") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto mix = fleet::FleetMix::zero(cat);
    auto s = ring_scenario({make_task(0, 0, 3, 0, ring_duration(10, 0, 3)),
                            make_task(1, 4, 7, 5, ring_duration(10, 4, 7))});
    auto res = simulate(s, mix, cat, DispatchConfig{});
    CHECK_FALSE(res.feasible);
    CHECK(res.unserved_tasks == std::vector<int>{0, 1});
    CHECK(res.objective_F == doctest::Approx(0.0));
}

TEST_CASE("simulate: unknown mix ids are rejected") {
    auto cat = fleet::FleetCatalog::default_fixed();
    fleet::FleetMix mix;
    mix.vehicle_counts["no_such_type"] = 1;
    auto s = ring_scenario({make_task(0, 0, 3, 0, ring_duration(10, 0, 3))});
    CHECK_THROWS_AS(simulate(s, mix, cat, DispatchConfig{}), std::invalid_argument);
}

TEST_CASE("simulate: deadhead counts in timing and in the traffic log") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto mix = fleet::FleetMix::zero(cat);
    mix.vehicle_counts["medium_type1"] = 1;
    mix.stations["medium_type1"] = {8};

    // 0 -> 3: duration 210 (7 hops the long way), deadline 270.
    auto s = ring_scenario({make_task(0, 0, 3, 0, ring_duration(10, 0, 3))});
    auto res = simulate(s, mix, cat, DispatchConfig{});
    REQUIRE(res.feasible);
    REQUIRE(res.trips.size() == 1);
    const auto& trip = res.trips[0];
    CHECK(trip.deadhead == std::vector<int>{8, 9, 0}); // 2 hops to the origin
    // service starts once the deadhead arrives
    CHECK(trip.service_start == 2 * 30);
    CHECK(res.per_task[0].completion == 2 * 30 + 30 + 3 * 30 + 30);
    // crossings: deadhead 3 + route 4 + return 4
    CHECK(res.total_crossings == 3 + 4 + 4);
}

TEST_CASE("simulate determinism: identical inputs, identical serialized result") {
    scengen::ScenarioConfig scfg;
    scfg.seed = 404;
    scfg.horizon_min = 120;
    auto s = scengen::generate_scenario(scfg, netlab::ring(10));

    auto cat = fleet::FleetCatalog::default_modular();
    auto mix = fleet::FleetMix::zero(cat);
    mix.vehicle_counts["medium_motive"] = 6;
    mix.vehicle_counts["heavy_motive"] = 4;
    mix.module_counts["module_type1"] = 5;
    mix.module_counts["module_type2"] = 5;

    DispatchConfig cfg;
    cfg.penalty_window_y_min = 60;
    auto a = simulate(s, mix, cat, cfg).to_json();
    auto b = simulate(s, mix, cat, cfg).to_json();
    CHECK(a == b);
}

TEST_CASE("simulate invariants on a seeded scenario") {
    scengen::ScenarioConfig scfg;
    scfg.seed = 1010;
    scfg.horizon_min = 180;
    auto s = scengen::generate_scenario(scfg, netlab::ring(10));

    auto cat = fleet::FleetCatalog::default_fixed();
    auto repaired = min_feasible_additions(s, fleet::FleetMix::zero(cat), cat, DispatchConfig{});
    REQUIRE(repaired.ok);
    auto res = simulate(s, repaired.mix, cat, DispatchConfig{});
    REQUIRE(res.feasible);

    // With y = 0, objective_F equals the acquisition cost exactly.
    CHECK(res.objective_F == doctest::Approx(res.acquisition_cost));

    // Every completion within the window; starts at or after release.
    for (const auto& rec : res.per_task) {
        const auto& t = s.tasks[rec.task_id];
        CHECK(rec.start >= t.earliest_start);
        CHECK(rec.completion <= task_deadline(t, 30));
    }

    // Vehicle timelines never overlap.
    std::map<std::string, std::vector<std::pair<Minutes, Minutes>>> spans;
    for (const auto& trip : res.trips)
        spans[trip.vehicle_id].push_back({trip.depart, trip.ready_again});
    for (auto& [veh, list] : spans) {
        std::sort(list.begin(), list.end());
        for (size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].second <= list[i].first);
    }

    // Crossing conservation: log total equals the per-trip leg sums.
    long long expected = 0;
    for (const auto& trip : res.trips) {
        if (trip.deadhead.size() >= 2) expected += static_cast<long long>(trip.deadhead.size());
        expected += static_cast<long long>(trip.route.size());
        if (trip.return_leg.size() >= 2)
            expected += static_cast<long long>(trip.return_leg.size());
    }
    CHECK(res.total_crossings == expected);
}

TEST_CASE("min_feasible_additions: fixed point on a feasible mix") {
    auto cat = fleet::FleetCatalog::default_fixed();
    auto s = ring_scenario({make_task(0, 0, 3, 10, ring_duration(10, 0, 3))});

    auto empty = fleet::FleetMix::zero(cat);
    auto first = min_feasible_additions(s, empty, cat, DispatchConfig{});
    REQUIRE(first.ok);
    CHECK(first.mix.vehicle_counts["medium_type1"] == 1);
    CHECK(first.mix.vehicle_counts["medium_type2"] == 0);
    CHECK(first.mix.vehicle_counts["heavy_type1"] == 0);
    CHECK(first.mix.stations["medium_type1"] == std::vector<int>{0});

    auto again = min_feasible_additions(s, first.mix, cat, DispatchConfig{});
    REQUIRE(again.ok);
    CHECK(again.iterations == 0);
    CHECK(again.mix.to_json() == first.mix.to_json());
}

TEST_CASE("min_feasible_additions: modular pair for a single task") {
    auto cat = fleet::FleetCatalog::default_modular();
    auto s = ring_scenario({make_task(0, 2, 6, 0, ring_duration(10, 2, 6))});
    auto out = min_feasible_additions(s, fleet::FleetMix::zero(cat), cat, DispatchConfig{});
    REQUIRE(out.ok);
    CHECK(out.mix.vehicle_counts["medium_motive"] == 1);
    CHECK(out.mix.vehicle_counts["heavy_motive"] == 0);
    CHECK(out.mix.module_counts["module_type1"] == 1);
    CHECK(out.mix.module_counts["module_type2"] == 0);
    CHECK(out.mix.stations["medium_motive"] == std::vector<int>{2});

    auto res = simulate(s, out.mix, cat, DispatchConfig{});
    CHECK(res.feasible);
}

TEST_CASE("repaired mixes simulate feasible on random scenarios") {
    Rng rng(611);
    for (int iter = 0; iter < 8; ++iter) {
        scengen::ScenarioConfig scfg;
        scfg.seed = rng.next_u64();
        scfg.horizon_min = 90;
        auto g = iter % 2 == 0 ? netlab::ring(10)
                               : netlab::morph_with(netlab::ring(10), 0, 5);
        auto s = scengen::generate_scenario(scfg, g);
        auto cat = iter % 2 == 0 ? fleet::FleetCatalog::default_fixed()
                                 : fleet::FleetCatalog::default_modular();
        auto out = min_feasible_additions(s, fleet::FleetMix::zero(cat), cat, DispatchConfig{});
        REQUIRE(out.ok);
        CHECK(simulate(s, out.mix, cat, DispatchConfig{}).feasible);
    }
}

TEST_CASE("modular fleets undercut fixed fleets at the default waiting times") {
    // The faster modular load/unload stop shortens every vehicle cycle, so
    // repaired modular fleets come out markedly cheaper on average.
    DispatchConfig cfg;
    auto fixed = fleet::FleetCatalog::default_fixed();
    auto modular = fleet::FleetCatalog::default_modular();
    Rng rng(13);
    double fixed_total = 0, modular_total = 0;
    int modular_cheaper = 0;
    for (int iter = 0; iter < 10; ++iter) {
        scengen::ScenarioConfig scfg;
        scfg.seed = rng.next_u64();
        scfg.horizon_min = 60;
        auto s = scengen::generate_scenario(scfg, netlab::ring(10));
        auto rf = min_feasible_additions(s, fleet::FleetMix::zero(fixed), fixed, cfg);
        auto rm = min_feasible_additions(s, fleet::FleetMix::zero(modular), modular, cfg);
        REQUIRE(rf.ok);
        REQUIRE(rm.ok);
        auto ff = simulate(s, rf.mix, fixed, cfg);
        auto fm = simulate(s, rm.mix, modular, cfg);
        fixed_total += ff.objective_F;
        modular_total += fm.objective_F;
        if (fm.objective_F < ff.objective_F) ++modular_cheaper;
    }
    CHECK(modular_total < 0.9 * fixed_total);
    CHECK(modular_cheaper >= 8);
}
