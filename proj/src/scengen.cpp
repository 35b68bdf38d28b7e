#include "modfleet/scengen.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "modfleet/rng.hpp"

namespace modfleet::scengen {

namespace {

const char* flexibility_mode_name(FlexibilityMode m) {
    return m == FlexibilityMode::route_relative ? "route_relative" : "proportional";
}

FlexibilityMode flexibility_mode_from(const std::string& s) {
    if (s == "route_relative") return FlexibilityMode::route_relative;
    if (s == "proportional") return FlexibilityMode::proportional;
    throw std::invalid_argument("unknown flexibility mode: " + s);
}

const char* stream_mode_name(StreamMode m) {
    return m == StreamMode::global ? "global" : "per_origin_node";
}

StreamMode stream_mode_from(const std::string& s) {
    if (s == "global") return StreamMode::global;
    if (s == "per_origin_node") return StreamMode::per_origin_node;
    throw std::invalid_argument("unknown stream mode: " + s);
}

} // namespace

void ScenarioConfig::validate() const {
    if (edge_travel_min <= 0) throw std::invalid_argument("edge_travel_min must be positive");
    if (inter_task_min < 0) throw std::invalid_argument("inter_task_min must be non-negative");
    if (horizon_min < 0) throw std::invalid_argument("horizon_min must be non-negative");
    if (p_type1 < 0 || p_type1 > 1 || p_heavy < 0 || p_heavy > 1)
        throw std::invalid_argument("type probabilities must lie in [0,1]");
    if (flexibility_alpha < 0) throw std::invalid_argument("flexibility_alpha must be >= 0");
    if (task_cap < 1) throw std::invalid_argument("task_cap must be positive");
}

std::string ScenarioConfig::to_json() const {
    nlohmann::json j;
    j["edge_travel_min"] = edge_travel_min;
    j["inter_task_min"] = inter_task_min;
    j["horizon_min"] = horizon_min;
    j["flexibility_mode"] = flexibility_mode_name(flexibility_mode);
    j["flexibility_alpha"] = flexibility_alpha;
    j["stream_mode"] = stream_mode_name(stream_mode);
    j["p_type1"] = p_type1;
    j["p_heavy"] = p_heavy;
    j["seed"] = seed;
    j["task_cap"] = task_cap;
    return j.dump();
}

ScenarioConfig ScenarioConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ScenarioConfig cfg;
    if (j.contains("edge_travel_min")) cfg.edge_travel_min = j["edge_travel_min"].get<Minutes>();
    if (j.contains("inter_task_min")) cfg.inter_task_min = j["inter_task_min"].get<Minutes>();
    if (j.contains("horizon_min")) cfg.horizon_min = j["horizon_min"].get<Minutes>();
    if (j.contains("flexibility_mode"))
        cfg.flexibility_mode = flexibility_mode_from(j["flexibility_mode"].get<std::string>());
    if (j.contains("flexibility_alpha")) cfg.flexibility_alpha = j["flexibility_alpha"].get<double>();
    if (j.contains("stream_mode"))
        cfg.stream_mode = stream_mode_from(j["stream_mode"].get<std::string>());
    if (j.contains("p_type1")) cfg.p_type1 = j["p_type1"].get<double>();
    if (j.contains("p_heavy")) cfg.p_heavy = j["p_heavy"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("task_cap")) cfg.task_cap = j["task_cap"].get<long long>();
    cfg.validate();
    return cfg;
}

namespace {

nlohmann::json task_to_json(const Task& t) {
    nlohmann::json j;
    j["id"] = t.id;
    j["type"] = to_string(t.type);
    j["size"] = to_string(t.size);
    j["origin"] = t.origin;
    j["destination"] = t.destination;
    j["earliest_start"] = t.earliest_start;
    j["duration"] = t.duration;
    j["flexibility"] = t.flexibility;
    return j;
}

Task task_from_json(const nlohmann::json& j) {
    Task t;
    t.id = j.at("id").get<int>();
    t.type = task_type_from_string(j.at("type").get<std::string>());
    t.size = task_size_from_string(j.at("size").get<std::string>());
    t.origin = j.at("origin").get<int>();
    t.destination = j.at("destination").get<int>();
    t.earliest_start = j.at("earliest_start").get<Minutes>();
    t.duration = j.at("duration").get<Minutes>();
    t.flexibility = j.at("flexibility").get<Minutes>();
    return t;
}

} // namespace

std::string Scenario::to_json() const {
    nlohmann::json j;
    j["graph"] = nlohmann::json::parse(graph.to_json());
    j["config"] = nlohmann::json::parse(config.to_json());
    auto arr = nlohmann::json::array();
    for (const auto& t : tasks) arr.push_back(task_to_json(t));
    j["tasks"] = arr;
    return j.dump();
}

Scenario Scenario::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Scenario s;
    s.graph = netlab::Graph::from_json(j.at("graph").dump());
    s.config = ScenarioConfig::from_json(j.at("config").dump());
    for (const auto& tj : j.at("tasks")) s.tasks.push_back(task_from_json(tj));
    return s;
}

Scenario generate_scenario(const ScenarioConfig& cfg, const netlab::Graph& g) {
    cfg.validate();
    if (!g.is_connected()) throw std::invalid_argument("scenario graph must be connected");
    int n = g.node_count();
    if (n < 2) throw std::invalid_argument("scenario graph needs at least 2 nodes");

    auto longest = netlab::all_pairs_longest_hops(g);

    struct Draft {
        Task task;
        int stream;
        int seq;
    };
    std::vector<Draft> drafts;

    int stream_count = cfg.stream_mode == StreamMode::per_origin_node ? n : 1;
    long long produced = 0;
    for (int stream = 0; stream < stream_count && produced < cfg.task_cap; ++stream) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(stream)));
        Minutes t = 0;
        int seq = 0;
        while (produced < cfg.task_cap) {
            t += rng.uniform_int(0, cfg.inter_task_min);
            if (t > cfg.horizon_min) break;
            Task task;
            task.earliest_start = t;
            if (cfg.stream_mode == StreamMode::per_origin_node) {
                task.origin = stream;
            } else {
                task.origin = static_cast<int>(rng.uniform_int(0, n - 1));
            }
            int dest = static_cast<int>(rng.uniform_int(0, n - 2));
            if (dest >= task.origin) ++dest;
            task.destination = dest;
            task.type = rng.bernoulli(cfg.p_type1) ? TaskType::type1 : TaskType::type2;
            task.size = rng.bernoulli(cfg.p_heavy) ? TaskSize::heavy : TaskSize::medium;
            task.duration = longest[task.origin][task.destination] * cfg.edge_travel_min;
            switch (cfg.flexibility_mode) {
                case FlexibilityMode::route_relative:
                    task.flexibility = 0;
                    break;
                case FlexibilityMode::proportional:
                    task.flexibility = static_cast<Minutes>(
                        std::llround(cfg.flexibility_alpha * static_cast<double>(task.duration)));
                    break;
            }
            drafts.push_back({task, stream, seq++});
            ++produced;
        }
    }

    std::sort(drafts.begin(), drafts.end(), [](const Draft& x, const Draft& y) {
        if (x.task.earliest_start != y.task.earliest_start)
            return x.task.earliest_start < y.task.earliest_start;
        if (x.stream != y.stream) return x.stream < y.stream;
        return x.seq < y.seq;
    });

    Scenario s;
    s.graph = g;
    s.config = cfg;
    s.tasks.reserve(drafts.size());
    for (size_t i = 0; i < drafts.size(); ++i) {
        drafts[i].task.id = static_cast<int>(i);
        s.tasks.push_back(drafts[i].task);
    }
    return s;
}

ScenarioStats scenario_stats(const Scenario& s) {
    ScenarioStats st;
    st.task_count = static_cast<long long>(s.tasks.size());
    if (s.tasks.empty()) return st;
    double dur = 0, flex = 0;
    for (const auto& t : s.tasks) {
        ++st.count_by_type_size[static_cast<int>(t.type)][static_cast<int>(t.size)];
        dur += static_cast<double>(t.duration);
        flex += static_cast<double>(t.flexibility);
    }
    st.mean_duration = dur / static_cast<double>(st.task_count);
    st.mean_flexibility = flex / static_cast<double>(st.task_count);
    return st;
}

} // namespace modfleet::scengen
