#include "modfleet/dispatch.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <json.hpp>

namespace modfleet::dispatch {

void DispatchConfig::validate() const {
    if (waiting_fixed_min < 0 || waiting_modular_min < 0)
        throw std::invalid_argument("waiting times must be non-negative");
    if (penalty_window_y_min < 0)
        throw std::invalid_argument("penalty window must be non-negative");
    if (penalty_rate < 0) throw std::invalid_argument("penalty rate must be non-negative");
    if (time_weight < 0) throw std::invalid_argument("time weight must be non-negative");
}

std::string DispatchConfig::to_json() const {
    nlohmann::json j;
    j["waiting_fixed_min"] = waiting_fixed_min;
    j["waiting_modular_min"] = waiting_modular_min;
    j["penalty_window_y_min"] = penalty_window_y_min;
    j["penalty_rate"] = penalty_rate;
    j["time_weight"] = time_weight;
    return j.dump();
}

DispatchConfig DispatchConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DispatchConfig cfg;
    if (j.contains("waiting_fixed_min")) cfg.waiting_fixed_min = j["waiting_fixed_min"].get<Minutes>();
    if (j.contains("waiting_modular_min"))
        cfg.waiting_modular_min = j["waiting_modular_min"].get<Minutes>();
    if (j.contains("penalty_window_y_min"))
        cfg.penalty_window_y_min = j["penalty_window_y_min"].get<Minutes>();
    if (j.contains("penalty_rate")) cfg.penalty_rate = j["penalty_rate"].get<double>();
    if (j.contains("time_weight")) cfg.time_weight = j["time_weight"].get<double>();
    cfg.validate();
    return cfg;
}

void TrafficLog::record(int node, Minutes t) {
    auto& v = per_node_[node];
    // Commits carry future timestamps, so keep the vector sorted; most
    // inserts land at or near the tail.
    if (v.empty() || v.back() <= t) {
        v.push_back(t);
    } else {
        v.insert(std::upper_bound(v.begin(), v.end(), t), t);
    }
    ++total_;
}

long long TrafficLog::count_in_window(int node, Minutes now, Minutes y) const {
    if (y <= 0) return 0;
    const auto& v = per_node_[node];
    auto hi = std::upper_bound(v.begin(), v.end(), now);
    auto lo = std::upper_bound(v.begin(), v.end(), now - y);
    return hi - lo;
}

Money route_penalty(const std::vector<int>& route, const TrafficLog& log, Minutes now,
                    Minutes y, Money purchase_cost, double rate) {
    if (y <= 0) return 0.0;
    long long worst = 0;
    for (int node : route)
        worst = std::max(worst, log.count_in_window(node, now, y));
    return static_cast<double>(worst) * rate * purchase_cost;
}

Minutes task_deadline(const scengen::Task& t, Minutes stop_allowance_min) {
    return t.earliest_start + t.flexibility + t.duration + 2 * stop_allowance_min;
}

std::optional<RouteChoice> select_route(const std::vector<std::vector<int>>& candidates,
                                        const RouteQuery& query, const TrafficLog& log,
                                        Money vehicle_cost, const DispatchConfig& cfg) {
    Minutes budget = query.deadline - query.service_start - 2 * query.waiting_min;
    bool scored = cfg.penalty_window_y_min > 0;
    std::optional<RouteChoice> best;
    double best_score = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        Minutes travel =
            static_cast<Minutes>(candidates[i].size() - 1) * query.edge_travel_min;
        if (travel > budget) break; // candidates sorted ascending by hops
        if (!scored) return RouteChoice{static_cast<int>(i), 0.0};
        Money pen = route_penalty(candidates[i], log, query.clock,
                                  cfg.penalty_window_y_min, vehicle_cost, cfg.penalty_rate);
        double score = cfg.time_weight * static_cast<double>(travel) + pen;
        if (!best || score < best_score) {
            best = RouteChoice{static_cast<int>(i), pen};
            best_score = score;
        }
    }
    return best;
}

std::string ScheduleResult::to_json() const {
    nlohmann::json j;
    j["feasible"] = feasible;
    j["unserved_tasks"] = unserved_tasks;
    auto tasks = nlohmann::json::array();
    for (const auto& r : per_task) {
        nlohmann::json tj;
        tj["task"] = r.task_id;
        tj["vehicle"] = r.vehicle_id;
        if (!r.module_id.empty()) tj["module"] = r.module_id;
        tj["trip"] = r.trip_index;
        tj["start"] = r.start;
        tj["completion"] = r.completion;
        tj["route"] = r.route;
        tasks.push_back(tj);
    }
    j["per_task"] = tasks;
    auto trips_json = nlohmann::json::array();
    for (const auto& t : trips) {
        nlohmann::json tj;
        tj["vehicle"] = t.vehicle_id;
        if (!t.module_id.empty()) tj["module"] = t.module_id;
        tj["tasks"] = t.task_ids;
        tj["deadhead"] = t.deadhead;
        tj["route"] = t.route;
        tj["return"] = t.return_leg;
        tj["depart"] = t.depart;
        tj["service_start"] = t.service_start;
        tj["completion"] = t.completion;
        tj["ready_again"] = t.ready_again;
        tj["penalty"] = t.penalty;
        trips_json.push_back(tj);
    }
    j["trips"] = trips_json;
    j["traffic_penalty_total"] = traffic_penalty_total;
    j["acquisition_cost"] = acquisition_cost;
    j["objective_F"] = objective_F;
    j["total_crossings"] = total_crossings;
    return j.dump();
}

namespace {

struct VehicleInstance {
    int type_idx;
    int instance;
    int location;
    Minutes ready;
};

struct ModuleInstance {
    int type_idx;
    int instance;
    int location;
    Minutes ready;
};

struct Simulator {
    const scengen::Scenario& scenario;
    const fleet::FleetCatalog& cat;
    const DispatchConfig& cfg;
    bool stop_at_first_unserved;

    int n = 0;
    Minutes edge_travel = 30;
    Minutes waiting = 0;        // this fleet's per-stop service time
    Minutes stop_allowance = 0; // task windows budget the slower fleet's stops
    std::vector<std::vector<int>> dist;
    std::vector<std::vector<std::vector<int>>> candidate_cache;
    std::vector<char> candidate_ready;

    std::vector<VehicleInstance> vehicles;
    std::vector<std::vector<int>> idle_by_type; // sorted vehicle indices
    long long total_idle = 0;
    std::vector<long long> type_counts;
    std::vector<ModuleInstance> modules;
    // Per module type, (ready, instance) ordered for O(1) earliest pick.
    std::vector<std::set<std::pair<Minutes, int>>> modules_by_type;

    std::vector<Minutes> deadline;
    std::vector<Minutes> min_serve; // 2*waiting + shortest travel
    std::vector<std::vector<int>> compat_types;

    struct PendingOrder {
        const std::vector<Minutes>* deadline;
        const std::vector<scengen::Task>* tasks;
        bool operator()(int a, int b) const {
            if ((*deadline)[a] != (*deadline)[b]) return (*deadline)[a] < (*deadline)[b];
            if ((*tasks)[a].earliest_start != (*tasks)[b].earliest_start)
                return (*tasks)[a].earliest_start < (*tasks)[b].earliest_start;
            return a < b;
        }
    };
    std::set<int, PendingOrder> pending; // released, unassigned
    std::vector<char> assigned;
    std::vector<char> unserved;
    // Unassigned medium tasks grouped for bundling, keyed by
    // (origin * n + destination) * 2 + type.
    std::map<long long, std::vector<int>> bundle_pool;

    TrafficLog log;
    std::priority_queue<Minutes, std::vector<Minutes>, std::greater<>> events;
    // Vehicles waiting to re-enter the idle lists, keyed by ready time.
    std::priority_queue<std::pair<Minutes, int>, std::vector<std::pair<Minutes, int>>,
                        std::greater<>>
        returning;

    ScheduleResult result;
    bool aborted = false;

    Simulator(const scengen::Scenario& s, const fleet::FleetMix& mix,
              const fleet::FleetCatalog& c, const DispatchConfig& d, bool early_stop)
        : scenario(s), cat(c), cfg(d), stop_at_first_unserved(early_stop),
          pending(PendingOrder{&deadline, &s.tasks}) {
        cfg.validate();
        n = s.graph.node_count();
        edge_travel = s.config.edge_travel_min;
        waiting = cat.mode == fleet::FleetMode::fixed ? cfg.waiting_fixed_min
                                                      : cfg.waiting_modular_min;
        stop_allowance = std::max(cfg.waiting_fixed_min, cfg.waiting_modular_min);
        dist = netlab::all_pairs_shortest_hops(s.graph);
        candidate_cache.resize(static_cast<size_t>(n) * n);
        candidate_ready.assign(static_cast<size_t>(n) * n, 0);
        log = TrafficLog(n);
        build_fleet(mix);
        index_tasks();
        result.acquisition_cost = fleet::acquisition_cost(mix, cat);
    }

    // Instance k of a type homes at its listed station when one exists,
    // otherwise at (type_idx + k) mod n; defaults stay stable when other
    // types change counts.
    int home_node(const fleet::FleetMix& mix, const std::string& type_id, int type_idx,
                  int k) const {
        auto it = mix.stations.find(type_id);
        if (it != mix.stations.end() && k < static_cast<int>(it->second.size())) {
            int node = it->second[k];
            if (node < 0 || node >= n) throw std::invalid_argument("station out of range");
            return node;
        }
        return (type_idx + k) % n;
    }

    void build_fleet(const fleet::FleetMix& mix) {
        for (const auto& [id, count] : mix.vehicle_counts) {
            cat.vehicle(id); // throws on unknown ids
            if (count < 0) throw std::invalid_argument("negative vehicle count");
        }
        for (const auto& [id, count] : mix.module_counts) {
            cat.module(id);
            if (count < 0) throw std::invalid_argument("negative module count");
        }
        idle_by_type.resize(cat.vehicle_types.size());
        type_counts.assign(cat.vehicle_types.size(), 0);
        for (size_t ti = 0; ti < cat.vehicle_types.size(); ++ti) {
            const auto& vt = cat.vehicle_types[ti];
            auto it = mix.vehicle_counts.find(vt.id);
            long long count = it == mix.vehicle_counts.end() ? 0 : it->second;
            type_counts[ti] = count;
            for (long long k = 0; k < count; ++k) {
                idle_by_type[ti].push_back(static_cast<int>(vehicles.size()));
                vehicles.push_back({static_cast<int>(ti), static_cast<int>(k),
                                    home_node(mix, vt.id, static_cast<int>(ti),
                                              static_cast<int>(k)),
                                    0});
            }
        }
        total_idle = static_cast<long long>(vehicles.size());
        modules_by_type.resize(cat.module_types.size());
        for (size_t mi = 0; mi < cat.module_types.size(); ++mi) {
            const auto& mt = cat.module_types[mi];
            auto it = mix.module_counts.find(mt.id);
            long long count = it == mix.module_counts.end() ? 0 : it->second;
            for (long long k = 0; k < count; ++k) {
                modules_by_type[mi].insert({0, static_cast<int>(modules.size())});
                modules.push_back({static_cast<int>(mi), static_cast<int>(k),
                                   static_cast<int>((mi + k) % n), 0});
            }
        }
    }

    int module_type_index(TaskType type) const {
        for (size_t mi = 0; mi < cat.module_types.size(); ++mi)
            if (cat.module_types[mi].task_type == type) return static_cast<int>(mi);
        return -1;
    }

    void index_tasks() {
        const auto& tasks = scenario.tasks;
        deadline.resize(tasks.size());
        min_serve.resize(tasks.size());
        compat_types.resize(tasks.size());
        assigned.assign(tasks.size(), 0);
        unserved.assign(tasks.size(), 0);
        bool modular = cat.mode == fleet::FleetMode::modular;
        for (size_t i = 0; i < tasks.size(); ++i) {
            const auto& t = tasks[i];
            deadline[i] = task_deadline(t, stop_allowance);
            min_serve[i] = 2 * waiting + dist[t.origin][t.destination] * edge_travel;
            const fleet::ModuleType* mt = nullptr;
            if (modular) {
                int mi = module_type_index(t.type);
                if (mi >= 0) mt = &cat.module_types[mi];
            }
            for (size_t ti = 0; ti < cat.vehicle_types.size(); ++ti) {
                const auto& vt = cat.vehicle_types[ti];
                if (vt.kind == fleet::VehicleKind::motive && mt == nullptr) continue;
                if (fleet::can_serve(vt, vt.kind == fleet::VehicleKind::motive ? mt : nullptr,
                                     t))
                    compat_types[i].push_back(static_cast<int>(ti));
            }
            // Cheapest type first; the Fleet Manager works down this list.
            std::sort(compat_types[i].begin(), compat_types[i].end(), [&](int a, int b) {
                if (cat.vehicle_types[a].purchase_cost != cat.vehicle_types[b].purchase_cost)
                    return cat.vehicle_types[a].purchase_cost < cat.vehicle_types[b].purchase_cost;
                return a < b;
            });
        }
    }

    // True when the mix can never serve the task, whatever the timing.
    bool never_serveable(int task_id) const {
        bool any = false;
        for (int ti : compat_types[task_id])
            if (type_counts[ti] > 0) {
                any = true;
                break;
            }
        if (!any) return true;
        if (cat.mode == fleet::FleetMode::modular) {
            int mi = module_type_index(scenario.tasks[task_id].type);
            if (mi < 0 || modules_by_type[mi].empty()) return true;
        }
        return false;
    }

    const std::vector<std::vector<int>>& candidates(int s, int t) {
        size_t key = static_cast<size_t>(s) * n + t;
        if (!candidate_ready[key]) {
            candidate_cache[key] = netlab::route_candidates(scenario.graph, s, t);
            candidate_ready[key] = 1;
        }
        return candidate_cache[key];
    }

    // Lexicographically smallest shortest path, for deadhead and return legs.
    std::vector<int> shortest_path(int s, int t) const {
        std::vector<int> path{s};
        int cur = s;
        while (cur != t) {
            for (int w : scenario.graph.neighbors(cur)) // ascending
                if (dist[w][t] == dist[cur][t] - 1) {
                    cur = w;
                    path.push_back(w);
                    break;
                }
        }
        return path;
    }

    void log_leg(const std::vector<int>& leg, Minutes depart) {
        if (leg.size() < 2) return;
        for (size_t i = 0; i < leg.size(); ++i)
            log.record(leg[i], depart + static_cast<Minutes>(i) * edge_travel);
    }

    std::string vehicle_label(const VehicleInstance& v) const {
        return cat.vehicle_types[v.type_idx].id + "#" + std::to_string(v.instance);
    }

    std::string module_label(const ModuleInstance& m) const {
        return cat.module_types[m.type_idx].id + "#" + std::to_string(m.instance);
    }

    long long bundle_key(const scengen::Task& t) const {
        return (static_cast<long long>(t.origin) * n + t.destination) * 2 +
               static_cast<long long>(t.type);
    }

    void remove_from_pool(int id) {
        const auto& t = scenario.tasks[id];
        if (t.size != TaskSize::medium) return;
        auto it = bundle_pool.find(bundle_key(t));
        if (it == bundle_pool.end()) return;
        auto& v = it->second;
        v.erase(std::remove(v.begin(), v.end(), id), v.end());
    }

    void mark_unserved(int task_id) {
        unserved[task_id] = 1;
        if (stop_at_first_unserved) aborted = true;
    }

    void release_idle(Minutes now) {
        while (!returning.empty() && returning.top().first <= now) {
            int vi = returning.top().second;
            returning.pop();
            auto& idle = idle_by_type[vehicles[vi].type_idx];
            idle.insert(std::lower_bound(idle.begin(), idle.end(), vi), vi);
            ++total_idle;
        }
    }

    // Tasks ordered by the moment their best conceivable service would miss
    // the deadline; lazily filtered against assignments.
    std::priority_queue<std::pair<Minutes, int>, std::vector<std::pair<Minutes, int>>,
                        std::greater<>>
        drop_queue;

    void run() {
        const auto& tasks = scenario.tasks;
        for (const auto& t : tasks) events.push(t.earliest_start);
        size_t release_ptr = 0;
        std::vector<int> sweep;

        while (!events.empty() && !aborted) {
            Minutes now = events.top();
            while (!events.empty() && events.top() == now) events.pop();

            release_idle(now);

            while (release_ptr < tasks.size() && tasks[release_ptr].earliest_start <= now &&
                   !aborted) {
                int id = static_cast<int>(release_ptr++);
                if (never_serveable(id)) {
                    mark_unserved(id);
                    continue;
                }
                pending.insert(id);
                drop_queue.push({deadline[id] - min_serve[id], id});
                if (tasks[id].size == TaskSize::medium)
                    bundle_pool[bundle_key(tasks[id])].push_back(id);
            }
            if (aborted) break;

            // Tasks whose best conceivable service now misses the deadline.
            while (!drop_queue.empty() && drop_queue.top().first < now && !aborted) {
                int id = drop_queue.top().second;
                drop_queue.pop();
                if (assigned[id] || unserved[id]) continue;
                pending.erase(id);
                remove_from_pool(id);
                mark_unserved(id);
            }
            if (aborted) break;

            // One assignment pass, deadline-first. Assignments only consume
            // vehicles, so a single pass per event suffices; no idle fleet,
            // no pass.
            if (total_idle > 0) {
                sweep.assign(pending.begin(), pending.end());
                for (int id : sweep) {
                    if (total_idle == 0) break;
                    if (assigned[id] || unserved[id]) continue;
                    try_assign(id, now);
                }
            }
        }

        if (!aborted) {
            bool early = stop_at_first_unserved;
            stop_at_first_unserved = false; // everything left is unserved anyway
            for (int id : pending) mark_unserved(id);
            stop_at_first_unserved = early;
        }
        finish();
    }

    void try_assign(int task_id, Minutes now) {
        const auto& task = scenario.tasks[task_id];

        // Module of the task's type with the earliest return, when needed.
        int module_idx = -1;
        Minutes module_ready = 0;
        if (cat.mode == fleet::FleetMode::modular) {
            int mi = module_type_index(task.type);
            if (mi < 0 || modules_by_type[mi].empty()) return;
            module_ready = modules_by_type[mi].begin()->first;
            module_idx = modules_by_type[mi].begin()->second;
        }

        // Cheapest compatible vehicle type first; within a type the earliest
        // available instance, ties to the lower index. A type whose best
        // instance admits no window-feasible route yields to the next type.
        const auto& cands = candidates(task.origin, task.destination);
        int best_vehicle = -1;
        Minutes best_start = 0;
        std::optional<RouteChoice> choice;
        RouteQuery query{now, 0, edge_travel, waiting, deadline[task_id]};
        for (int ti : compat_types[task_id]) {
            int cand_vehicle = -1;
            Minutes cand_start = 0;
            for (int vi : idle_by_type[ti]) {
                const auto& v = vehicles[vi];
                Minutes start = std::max({task.earliest_start,
                                          now + dist[v.location][task.origin] * edge_travel,
                                          module_ready});
                if (cand_vehicle < 0 || start < cand_start) {
                    cand_vehicle = vi;
                    cand_start = start;
                }
            }
            if (cand_vehicle < 0) continue;
            query.service_start = cand_start;
            auto c = select_route(cands, query, log,
                                  cat.vehicle_types[ti].purchase_cost, cfg);
            if (!c) continue;
            best_vehicle = cand_vehicle;
            best_start = cand_start;
            choice = c;
            break;
        }
        if (best_vehicle < 0) return; // nothing idle fits the window right now

        const auto& vt = cat.vehicle_types[vehicles[best_vehicle].type_idx];
        query.service_start = best_start;

        // Bundling: a heavy vehicle takes a second medium task with the same
        // endpoints and type when one trip satisfies both windows (waiting
        // for the partner's release if necessary).
        int partner_id = -1;
        if (vt.size == TaskSize::heavy && task.size == TaskSize::medium) {
            auto pool_it = bundle_pool.find(bundle_key(task));
            if (pool_it != bundle_pool.end()) {
                PendingOrder order{&deadline, &scenario.tasks};
                for (int cand_id : pool_it->second) {
                    if (cand_id == task_id || assigned[cand_id] || unserved[cand_id]) continue;
                    if (partner_id >= 0 && !order(cand_id, partner_id)) continue;
                    Minutes joint_start =
                        std::max(best_start, scenario.tasks[cand_id].earliest_start);
                    Minutes joint_deadline = std::min(deadline[task_id], deadline[cand_id]);
                    RouteQuery jq{now, joint_start, edge_travel, waiting, joint_deadline};
                    if (select_route(cands, jq, log, vt.purchase_cost, cfg))
                        partner_id = cand_id;
                }
                if (partner_id >= 0) {
                    query.service_start =
                        std::max(best_start, scenario.tasks[partner_id].earliest_start);
                    query.deadline = std::min(deadline[task_id], deadline[partner_id]);
                    choice = select_route(cands, query, log, vt.purchase_cost, cfg);
                    best_start = query.service_start;
                }
            }
        }

        commit(task_id, partner_id, best_vehicle, module_idx, now, best_start,
               cands[choice->candidate_index], choice->penalty);
    }

    void commit(int task_id, int partner_id, int vehicle_idx, int module_idx, Minutes now,
                Minutes service_start, const std::vector<int>& route, Money penalty) {
        auto& veh = vehicles[vehicle_idx];
        const auto& task = scenario.tasks[task_id];

        TripRecord trip;
        trip.vehicle_id = vehicle_label(veh);
        trip.task_ids.push_back(task_id);
        if (partner_id >= 0) trip.task_ids.push_back(partner_id);
        trip.depart = now;
        trip.service_start = service_start;
        trip.penalty = penalty;

        if (veh.location != task.origin) {
            trip.deadhead = shortest_path(veh.location, task.origin);
            log_leg(trip.deadhead, now);
        }
        trip.route = route;
        Minutes travel = static_cast<Minutes>(route.size() - 1) * edge_travel;
        trip.completion = service_start + waiting + travel + waiting;
        log_leg(trip.route, service_start + waiting);

        std::vector<int> back = shortest_path(task.destination, task.origin);
        Minutes return_travel = static_cast<Minutes>(back.size() - 1) * edge_travel;
        if (back.size() >= 2) {
            trip.return_leg = back;
            log_leg(trip.return_leg, trip.completion);
        }
        trip.ready_again = trip.completion + return_travel;

        if (module_idx >= 0) {
            auto& mod = modules[module_idx];
            trip.module_id = module_label(mod);
            // Rides back free of charge; available again on delivery.
            modules_by_type[mod.type_idx].erase({mod.ready, module_idx});
            mod.ready = trip.completion;
            mod.location = task.origin;
            modules_by_type[mod.type_idx].insert({mod.ready, module_idx});
        }

        veh.ready = trip.ready_again;
        veh.location = task.origin;
        auto& idle = idle_by_type[veh.type_idx];
        idle.erase(std::find(idle.begin(), idle.end(), vehicle_idx));
        --total_idle;
        returning.push({trip.ready_again, vehicle_idx});
        events.push(trip.ready_again);

        result.traffic_penalty_total += penalty;
        int trip_index = static_cast<int>(result.trips.size());

        for (int id : trip.task_ids) {
            assigned[id] = 1;
            pending.erase(id);
            remove_from_pool(id);
            PerTaskRecord rec;
            rec.task_id = id;
            rec.vehicle_id = trip.vehicle_id;
            rec.module_id = trip.module_id;
            rec.trip_index = trip_index;
            rec.start = service_start;
            rec.completion = trip.completion;
            rec.route = route;
            result.per_task.push_back(rec);
        }
        result.trips.push_back(std::move(trip));
    }

    void finish() {
        for (size_t i = 0; i < scenario.tasks.size(); ++i)
            if (unserved[i]) result.unserved_tasks.push_back(static_cast<int>(i));
        std::sort(result.unserved_tasks.begin(), result.unserved_tasks.end());
        std::sort(result.per_task.begin(), result.per_task.end(),
                  [](const PerTaskRecord& a, const PerTaskRecord& b) {
                      return a.task_id < b.task_id;
                  });
        result.feasible = result.unserved_tasks.empty() && !aborted;
        result.total_crossings = log.total();
        result.objective_F = result.acquisition_cost + result.traffic_penalty_total;
    }
};

ScheduleResult simulate_impl(const scengen::Scenario& scenario, const fleet::FleetMix& mix,
                             const fleet::FleetCatalog& cat, const DispatchConfig& cfg,
                             bool early_stop) {
    Simulator sim(scenario, mix, cat, cfg, early_stop);
    sim.run();
    return std::move(sim.result);
}

} // namespace

ScheduleResult simulate(const scengen::Scenario& scenario, const fleet::FleetMix& mix,
                        const fleet::FleetCatalog& cat, const DispatchConfig& cfg) {
    return simulate_impl(scenario, mix, cat, cfg, false);
}

RepairOutcome min_feasible_additions(const scengen::Scenario& scenario,
                                     const fleet::FleetMix& mix,
                                     const fleet::FleetCatalog& cat,
                                     const DispatchConfig& cfg) {
    RepairOutcome out;
    out.mix = mix;
    // Explicit zero entries for every catalog type.
    for (const auto& vt : cat.vehicle_types)
        out.mix.vehicle_counts.emplace(vt.id, 0);
    for (const auto& mt : cat.module_types)
        out.mix.module_counts.emplace(mt.id, 0);

    long long cap = 10 * std::max<long long>(1, static_cast<long long>(scenario.tasks.size()));
    for (long long iter = 0; iter <= cap; ++iter) {
        auto res = simulate_impl(scenario, out.mix, cat, cfg, true);
        out.iterations = iter;
        if (res.unserved_tasks.empty()) {
            out.ok = true;
            return out;
        }
        // Earliest-released unserved task drives the addition.
        int first = res.unserved_tasks.front();
        for (int id : res.unserved_tasks) {
            const auto& a = scenario.tasks[id];
            const auto& b = scenario.tasks[first];
            if (a.earliest_start < b.earliest_start ||
                (a.earliest_start == b.earliest_start && id < first))
                first = id;
        }
        const auto& task = scenario.tasks[first];

        const fleet::ModuleType* mod = nullptr;
        if (cat.mode == fleet::FleetMode::modular) {
            for (const auto& mt : cat.module_types)
                if (mt.task_type == task.type) mod = &mt;
            if (!mod) return out; // catalog cannot serve this task type
        }
        const fleet::VehicleType* best = nullptr;
        int best_idx = -1;
        for (size_t ti = 0; ti < cat.vehicle_types.size(); ++ti) {
            const auto& vt = cat.vehicle_types[ti];
            const fleet::ModuleType* query_mod =
                vt.kind == fleet::VehicleKind::motive ? mod : nullptr;
            if (vt.kind == fleet::VehicleKind::motive && !query_mod) continue;
            if (!fleet::can_serve(vt, query_mod, task)) continue;
            if (!best || vt.purchase_cost < best->purchase_cost) {
                best = &vt;
                best_idx = static_cast<int>(ti);
            }
        }
        if (!best) return out; // no vehicle type can serve it

        // Home the new vehicle at the task origin. Earlier instances keep
        // their defaults, so pad the station list before appending.
        auto& stations = out.mix.stations[best->id];
        long long count = out.mix.vehicle_counts[best->id];
        while (static_cast<long long>(stations.size()) < count)
            stations.push_back((best_idx + static_cast<int>(stations.size())) %
                               scenario.graph.node_count());
        stations.push_back(task.origin);
        ++out.mix.vehicle_counts[best->id];
        if (mod) ++out.mix.module_counts[mod->id];
    }
    out.ok = false; // iteration cap exceeded: repair failure
    return out;
}

} // namespace modfleet::dispatch
