#ifndef MODFLEET_FLEET_HPP
#define MODFLEET_FLEET_HPP

#include <map>
#include <string>
#include <vector>

#include "modfleet/common.hpp"
#include "modfleet/scengen.hpp"

namespace modfleet::fleet {

enum class VehicleKind { fixed, motive };
enum class FleetMode { fixed, modular };

struct VehicleType {
    std::string id;
    TaskSize size = TaskSize::medium;
    VehicleKind kind = VehicleKind::fixed;
    TaskType fixed_task_type = TaskType::type1; // meaningful only for kind == fixed
    Money purchase_cost = 0.0;
    double lane_length_m = 0.0;
};

struct ModuleType {
    std::string id;
    TaskType task_type = TaskType::type1;
    Money cost = 0.0;
};

struct FleetCatalog {
    FleetMode mode = FleetMode::fixed;
    std::vector<VehicleType> vehicle_types;
    std::vector<ModuleType> module_types;

    const VehicleType& vehicle(const std::string& id) const;
    const ModuleType& module(const std::string& id) const;
    Minutes waiting_min(Minutes waiting_fixed, Minutes waiting_modular) const {
        return mode == FleetMode::fixed ? waiting_fixed : waiting_modular;
    }

    // Structural invariants: fixed mode has the four built-in types and no
    // modules; modular mode has two motive types and two module types with
    // motive + module cost equal to the fixed counterpart per size class.
    void validate() const;

    std::string to_json() const;
    static FleetCatalog from_json(const std::string& text);

    // Default catalogs; cost/lane constants are config-overridable via JSON.
    static FleetCatalog default_fixed();
    static FleetCatalog default_modular();
};

struct FleetMix {
    std::map<std::string, long long> vehicle_counts;
    std::map<std::string, long long> module_counts;
    // Optional home nodes per type, filled by the repair operator; instances
    // beyond the listed ones take round-robin homes. Never negative counts.
    std::map<std::string, std::vector<int>> stations;

    bool empty() const;
    long long total_vehicles() const;

    std::string to_json() const;
    static FleetMix from_json(const std::string& text);

    // One entry per catalog type (explicit zeros); drops unknown ids.
    static FleetMix zero(const FleetCatalog& cat);
};

// Total purchase cost of a mix: vehicle and module counts times unit costs.
Money acquisition_cost(const FleetMix& mix, const FleetCatalog& cat);

// Population variance of the vehicle counts (modules excluded).
double diversity(const FleetMix& mix);

// Deck length the mix occupies in a sealift vessel; modules ride attached and
// contribute nothing.
double lane_meters(const FleetMix& mix, const FleetCatalog& cat);

// Task-type and size compatibility. `m` must be null for fixed vehicles and
// non-null for motive units (std::invalid_argument otherwise).
bool can_serve(const VehicleType& v, const ModuleType* m, const scengen::Task& t);

// Medium-equivalent load slots: medium trucks carry one, heavy trucks two.
int bundle_capacity(const VehicleType& v);

} // namespace modfleet::fleet

#endif
