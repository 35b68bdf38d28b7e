#ifndef MODFLEET_SCENGEN_HPP
#define MODFLEET_SCENGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "modfleet/common.hpp"
#include "modfleet/netlab.hpp"

namespace modfleet::scengen {

struct Task {
    int id = 0;
    TaskType type = TaskType::type1;
    TaskSize size = TaskSize::medium;
    int origin = 0;
    int destination = 0;
    Minutes earliest_start = 0;
    Minutes duration = 0;     // travel time over the longest origin-destination route
    Minutes flexibility = 0;  // extra slack on top of the duration
};

enum class FlexibilityMode {
    route_relative, // stored flexibility 0; shorter routes gain slack at dispatch
    proportional,   // flexibility = alpha * duration
};

enum class StreamMode { global, per_origin_node };

struct ScenarioConfig {
    Minutes edge_travel_min = 30;
    Minutes inter_task_min = 5;
    Minutes horizon_min = 720;
    FlexibilityMode flexibility_mode = FlexibilityMode::route_relative;
    double flexibility_alpha = 0.0;
    StreamMode stream_mode = StreamMode::per_origin_node;
    double p_type1 = 0.5;
    double p_heavy = 0.5;
    std::uint64_t seed = 0;
    long long task_cap = 100000;

    void validate() const;
    std::string to_json() const;
    static ScenarioConfig from_json(const std::string& text);
};

struct Scenario {
    netlab::Graph graph;
    std::vector<Task> tasks; // sorted by earliest_start
    ScenarioConfig config;

    std::string to_json() const;
    static Scenario from_json(const std::string& text);
};

// Samples a task stream over the graph. Each stream (one per origin node, or
// a single global one) is an independent child of cfg.seed; earliest starts
// advance by uniform integer gaps in [0, inter_task_min] until the horizon.
// Generation truncates silently at cfg.task_cap.
Scenario generate_scenario(const ScenarioConfig& cfg, const netlab::Graph& g);

struct ScenarioStats {
    long long task_count = 0;
    // indexed [type][size]
    long long count_by_type_size[2][2] = {{0, 0}, {0, 0}};
    double mean_duration = 0.0;
    double mean_flexibility = 0.0;
};

ScenarioStats scenario_stats(const Scenario& s);

} // namespace modfleet::scengen

#endif
