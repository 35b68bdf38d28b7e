#include "modfleet/fleet.hpp"

#include <cmath>

#include <json.hpp>

namespace modfleet::fleet {

namespace {

const char* kind_name(VehicleKind k) { return k == VehicleKind::fixed ? "fixed" : "motive"; }

VehicleKind kind_from(const std::string& s) {
    if (s == "fixed") return VehicleKind::fixed;
    if (s == "motive") return VehicleKind::motive;
    throw std::invalid_argument("unknown vehicle kind: " + s);
}

const char* mode_name(FleetMode m) { return m == FleetMode::fixed ? "fixed" : "modular"; }

FleetMode mode_from(const std::string& s) {
    if (s == "fixed") return FleetMode::fixed;
    if (s == "modular") return FleetMode::modular;
    throw std::invalid_argument("unknown fleet mode: " + s);
}

} // namespace

const VehicleType& FleetCatalog::vehicle(const std::string& id) const {
    for (const auto& v : vehicle_types)
        if (v.id == id) return v;
    throw std::invalid_argument("unknown vehicle type: " + id);
}

const ModuleType& FleetCatalog::module(const std::string& id) const {
    for (const auto& m : module_types)
        if (m.id == id) return m;
    throw std::invalid_argument("unknown module type: " + id);
}

void FleetCatalog::validate() const {
    for (const auto& v : vehicle_types) {
        if (v.purchase_cost <= 0) throw std::invalid_argument("vehicle cost must be positive");
        if (v.lane_length_m <= 0) throw std::invalid_argument("lane length must be positive");
    }
    for (const auto& m : module_types)
        if (m.cost < 0) throw std::invalid_argument("module cost must be non-negative");

    if (mode == FleetMode::fixed) {
        if (vehicle_types.size() != 4 || !module_types.empty())
            throw std::invalid_argument("fixed catalog needs 4 vehicle types and no modules");
        // one per size x task type
        for (TaskSize size : {TaskSize::medium, TaskSize::heavy})
            for (TaskType type : {TaskType::type1, TaskType::type2}) {
                int hits = 0;
                for (const auto& v : vehicle_types)
                    if (v.kind == VehicleKind::fixed && v.size == size && v.fixed_task_type == type)
                        ++hits;
                if (hits != 1)
                    throw std::invalid_argument("fixed catalog must cover each size/type once");
            }
    } else {
        if (vehicle_types.size() != 2 || module_types.size() != 2)
            throw std::invalid_argument("modular catalog needs 2 motive types and 2 module types");
        for (const auto& v : vehicle_types)
            if (v.kind != VehicleKind::motive)
                throw std::invalid_argument("modular catalog vehicles must be motive units");
    }
}

std::string FleetCatalog::to_json() const {
    nlohmann::json j;
    j["mode"] = mode_name(mode);
    auto vts = nlohmann::json::array();
    for (const auto& v : vehicle_types) {
        nlohmann::json vj;
        vj["id"] = v.id;
        vj["size"] = to_string(v.size);
        vj["kind"] = kind_name(v.kind);
        if (v.kind == VehicleKind::fixed) vj["task_type"] = to_string(v.fixed_task_type);
        vj["purchase_cost"] = v.purchase_cost;
        vj["lane_length_m"] = v.lane_length_m;
        vts.push_back(vj);
    }
    j["vehicle_types"] = vts;
    auto mts = nlohmann::json::array();
    for (const auto& m : module_types) {
        nlohmann::json mj;
        mj["id"] = m.id;
        mj["task_type"] = to_string(m.task_type);
        mj["cost"] = m.cost;
        mts.push_back(mj);
    }
    j["module_types"] = mts;
    return j.dump();
}

FleetCatalog FleetCatalog::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FleetCatalog cat;
    cat.mode = mode_from(j.at("mode").get<std::string>());
    for (const auto& vj : j.at("vehicle_types")) {
        VehicleType v;
        v.id = vj.at("id").get<std::string>();
        v.size = task_size_from_string(vj.at("size").get<std::string>());
        v.kind = kind_from(vj.at("kind").get<std::string>());
        if (v.kind == VehicleKind::fixed)
            v.fixed_task_type = task_type_from_string(vj.at("task_type").get<std::string>());
        v.purchase_cost = vj.at("purchase_cost").get<double>();
        v.lane_length_m = vj.at("lane_length_m").get<double>();
        cat.vehicle_types.push_back(v);
    }
    if (j.contains("module_types"))
        for (const auto& mj : j.at("module_types")) {
            ModuleType m;
            m.id = mj.at("id").get<std::string>();
            m.task_type = task_type_from_string(mj.at("task_type").get<std::string>());
            m.cost = mj.at("cost").get<double>();
            cat.module_types.push_back(m);
        }
    cat.validate();
    return cat;
}

FleetCatalog FleetCatalog::default_fixed() {
    FleetCatalog cat;
    cat.mode = FleetMode::fixed;
    cat.vehicle_types = {
        {"medium_type1", TaskSize::medium, VehicleKind::fixed, TaskType::type1, 1.0, 9.0},
        {"medium_type2", TaskSize::medium, VehicleKind::fixed, TaskType::type2, 1.0, 9.0},
        {"heavy_type1", TaskSize::heavy, VehicleKind::fixed, TaskType::type1, 1.6, 12.0},
        {"heavy_type2", TaskSize::heavy, VehicleKind::fixed, TaskType::type2, 1.6, 12.0},
    };
    return cat;
}

FleetCatalog FleetCatalog::default_modular() {
    FleetCatalog cat;
    cat.mode = FleetMode::modular;
    cat.vehicle_types = {
        {"medium_motive", TaskSize::medium, VehicleKind::motive, TaskType::type1, 0.95, 9.0},
        {"heavy_motive", TaskSize::heavy, VehicleKind::motive, TaskType::type1, 1.55, 12.0},
    };
    cat.module_types = {
        {"module_type1", TaskType::type1, 0.05},
        {"module_type2", TaskType::type2, 0.05},
    };
    return cat;
}

bool FleetMix::empty() const {
    for (const auto& [id, c] : vehicle_counts)
        if (c > 0) return false;
    for (const auto& [id, c] : module_counts)
        if (c > 0) return false;
    return true;
}

long long FleetMix::total_vehicles() const {
    long long total = 0;
    for (const auto& [id, c] : vehicle_counts) total += c;
    return total;
}

std::string FleetMix::to_json() const {
    nlohmann::json j;
    j["vehicle_counts"] = vehicle_counts;
    j["module_counts"] = module_counts;
    if (!stations.empty()) j["stations"] = stations;
    return j.dump();
}

FleetMix FleetMix::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FleetMix mix;
    for (const auto& [id, c] : j.at("vehicle_counts").items()) {
        long long count = c.get<long long>();
        if (count < 0) throw std::invalid_argument("negative vehicle count");
        mix.vehicle_counts[id] = count;
    }
    if (j.contains("module_counts"))
        for (const auto& [id, c] : j.at("module_counts").items()) {
            long long count = c.get<long long>();
            if (count < 0) throw std::invalid_argument("negative module count");
            mix.module_counts[id] = count;
        }
    if (j.contains("stations"))
        for (const auto& [id, nodes] : j.at("stations").items())
            mix.stations[id] = nodes.get<std::vector<int>>();
    return mix;
}

FleetMix FleetMix::zero(const FleetCatalog& cat) {
    FleetMix mix;
    for (const auto& v : cat.vehicle_types) mix.vehicle_counts[v.id] = 0;
    for (const auto& m : cat.module_types) mix.module_counts[m.id] = 0;
    return mix;
}

Money acquisition_cost(const FleetMix& mix, const FleetCatalog& cat) {
    Money total = 0;
    for (const auto& [id, count] : mix.vehicle_counts)
        total += cat.vehicle(id).purchase_cost * static_cast<double>(count);
    for (const auto& [id, count] : mix.module_counts)
        total += cat.module(id).cost * static_cast<double>(count);
    return total;
}

double diversity(const FleetMix& mix) {
    if (mix.vehicle_counts.empty())
        throw std::invalid_argument("diversity needs at least one vehicle type");
    double mean = 0;
    for (const auto& [id, c] : mix.vehicle_counts) mean += static_cast<double>(c);
    mean /= static_cast<double>(mix.vehicle_counts.size());
    double var = 0;
    for (const auto& [id, c] : mix.vehicle_counts) {
        double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    return var / static_cast<double>(mix.vehicle_counts.size());
}

double lane_meters(const FleetMix& mix, const FleetCatalog& cat) {
    double total = 0;
    for (const auto& [id, count] : mix.vehicle_counts)
        total += cat.vehicle(id).lane_length_m * static_cast<double>(count);
    return total;
}

bool can_serve(const VehicleType& v, const ModuleType* m, const scengen::Task& t) {
    if (v.kind == VehicleKind::motive && m == nullptr)
        throw std::invalid_argument("motive unit queried without a module");
    if (v.kind == VehicleKind::fixed && m != nullptr)
        throw std::invalid_argument("fixed vehicle queried with a module");
    TaskType served = v.kind == VehicleKind::fixed ? v.fixed_task_type : m->task_type;
    if (served != t.type) return false;
    if (t.size == TaskSize::heavy && v.size != TaskSize::heavy) return false;
    return true;
}

int bundle_capacity(const VehicleType& v) {
    return v.size == TaskSize::heavy ? 2 : 1;
}

} // namespace modfleet::fleet
