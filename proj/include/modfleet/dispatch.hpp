#ifndef MODFLEET_DISPATCH_HPP
#define MODFLEET_DISPATCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "modfleet/common.hpp"
#include "modfleet/fleet.hpp"
#include "modfleet/scengen.hpp"

namespace modfleet::dispatch {

struct DispatchConfig {
    Minutes waiting_fixed_min = 30;   // load/unload stop for fixed vehicles
    Minutes waiting_modular_min = 5;  // load/unload stop for motive units
    Minutes penalty_window_y_min = 0; // 0 disables the traffic penalty
    double penalty_rate = 0.001;      // fraction of purchase cost per crossing
    double time_weight = 0.0;         // money per travel minute in route scores

    void validate() const;
    std::string to_json() const;
    static DispatchConfig from_json(const std::string& text);
};

// Per-node crossing timestamps, kept sorted. Crossings committed for future
// times are visible only to queries with `now` at or past them.
class TrafficLog {
  public:
    TrafficLog() = default;
    explicit TrafficLog(int node_count) : per_node_(node_count) {}

    void record(int node, Minutes t);

    // Crossings in the half-open window (now - y, now].
    long long count_in_window(int node, Minutes now, Minutes y) const;

    long long total() const { return total_; }
    const std::vector<Minutes>& crossings(int node) const { return per_node_[node]; }

  private:
    std::vector<std::vector<Minutes>> per_node_;
    long long total_ = 0;
};

// Highest crossing count along the route (endpoints included) in the last y
// minutes, times rate, times the vehicle purchase cost. Zero when y == 0.
Money route_penalty(const std::vector<int>& route, const TrafficLog& log, Minutes now,
                    Minutes y, Money purchase_cost, double rate = 0.001);

// Window context for one route decision.
struct RouteQuery {
    Minutes clock = 0;          // decision time (traffic window anchor)
    Minutes service_start = 0;  // loading begins here
    Minutes edge_travel_min = 30;
    Minutes waiting_min = 0;    // per stop
    Minutes deadline = 0;       // latest completion
};

struct RouteChoice {
    int candidate_index = -1;
    Money penalty = 0.0;
};

// Among window-feasible candidates (service_start + 2*waiting + travel within
// the deadline), picks the one minimising time_weight * travel + penalty;
// ties resolve to the earliest candidate, so with y == 0 the shortest route
// wins. Returns nullopt when no candidate fits the window.
std::optional<RouteChoice> select_route(const std::vector<std::vector<int>>& candidates,
                                        const RouteQuery& query, const TrafficLog& log,
                                        Money vehicle_cost, const DispatchConfig& cfg);

struct TripRecord {
    std::string vehicle_id;
    std::string module_id;      // empty in fixed mode
    std::vector<int> task_ids;  // one, or two bundled medium tasks
    std::vector<int> deadhead;  // current node -> origin, empty if zero hops
    std::vector<int> route;     // origin -> destination
    std::vector<int> return_leg;// destination -> origin, empty if zero hops
    Minutes depart = 0;         // deadhead start (assignment commit time)
    Minutes service_start = 0;
    Minutes completion = 0;
    Minutes ready_again = 0;    // back at the origin node
    Money penalty = 0.0;
};

struct PerTaskRecord {
    int task_id = -1;
    std::string vehicle_id;
    std::string module_id; // empty in fixed mode
    int trip_index = -1;
    Minutes start = 0;
    Minutes completion = 0;
    std::vector<int> route;
};

struct ScheduleResult {
    bool feasible = false;
    std::vector<int> unserved_tasks;  // ascending task ids
    std::vector<PerTaskRecord> per_task;
    std::vector<TripRecord> trips;
    Money traffic_penalty_total = 0.0;
    Money acquisition_cost = 0.0;
    Money objective_F = 0.0;
    long long total_crossings = 0;

    std::string to_json() const;
};

// Latest completion the dispatcher accepts for a task: the task window
// (release + flexibility + duration) extended by two service stops at the
// slower fleet's stop time. The allowance is a task-level quantity, so a
// fleet that loads faster keeps the difference as schedule slack.
Minutes task_deadline(const scengen::Task& t, Minutes stop_allowance_min);

// Event-driven run of one fleet mix over a scenario. Tasks release at their
// earliest start and are assigned deadline-first to the earliest-available
// compatible vehicle (ties to the cheaper type, then the lower id); heavy
// vehicles bundle two compatible medium tasks sharing endpoints and windows.
// Every leg a vehicle drives is stamped into the traffic log. Infeasibility
// is reported in the result, never thrown.
ScheduleResult simulate(const scengen::Scenario& scenario, const fleet::FleetMix& mix,
                        const fleet::FleetCatalog& cat, const DispatchConfig& cfg);

struct RepairOutcome {
    bool ok = false;
    fleet::FleetMix mix;
    long long iterations = 0;
};

// Grows a mix until the scenario simulates feasible: each round adds the
// cheapest vehicle (and module, in modular mode) able to serve the first
// unserved task, homed at that task's origin. Gives up after
// 10 * task_count rounds.
RepairOutcome min_feasible_additions(const scengen::Scenario& scenario,
                                     const fleet::FleetMix& mix,
                                     const fleet::FleetCatalog& cat,
                                     const DispatchConfig& cfg);

} // namespace modfleet::dispatch

#endif
