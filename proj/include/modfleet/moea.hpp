#ifndef MODFLEET_MOEA_HPP
#define MODFLEET_MOEA_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "modfleet/dispatch.hpp"
#include "modfleet/fleet.hpp"
#include "modfleet/rng.hpp"
#include "modfleet/scengen.hpp"

namespace modfleet::moea {

// All three objectives are minimised.
struct Objectives {
    Money F = 0.0;          // acquisition cost plus traffic penalty
    double diversity = 0.0; // count variance over vehicle types
    double lane = 0.0;      // lane meters
};

struct Individual {
    fleet::FleetMix mix;
    Objectives objectives;
    bool feasible = false;
};

struct SolverConfig {
    int population_size = 20;
    int generations = 100;
    double mutation_rate = 0.2;  // per count entry
    double crossover_rate = 0.9;
    std::array<double, 3> epsilon{0.0, 0.0, 0.0}; // (F, diversity, lane) relaxation
    std::uint64_t seed = 0;
    int init_count_max = 2; // sparse random initial counts in [0, init_count_max]

    void validate() const;
    std::string to_json() const;
    static SolverConfig from_json(const std::string& text);
};

// a dominates b when a_i <= b_i + eps_i everywhere and strictly better in at
// least one coordinate. epsilon = 0 is standard Pareto dominance.
bool dominates(const Objectives& a, const Objectives& b,
               const std::array<double, 3>& epsilon = {0.0, 0.0, 0.0});

// Deterministic total order used for every tie-break: F, then lane, then
// diversity, then the serialized mix.
bool objective_order(const Individual& a, const Individual& b);

class ParetoArchive {
  public:
    explicit ParetoArchive(std::array<double, 3> epsilon = {0.0, 0.0, 0.0})
        : epsilon_(epsilon) {}

    // Keeps the archive mutually non-dominated. Returns false when the
    // candidate is dominated (or an exact duplicate) and was not added.
    bool insert(Individual candidate);

    const std::vector<Individual>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    size_t size() const { return members_.size(); }

    std::string to_json() const;

  private:
    std::array<double, 3> epsilon_;
    std::vector<Individual> members_;
};

// Member with minimal F; ties by lane, diversity, then serialized mix.
// Throws std::runtime_error on an empty archive.
const Individual& best_cost(const ParetoArchive& archive);

struct EvolveResult {
    ParetoArchive archive;
    long long evaluations = 0;
    long long repair_failures = 0;
};

using GenerationObserver =
    std::function<void(int generation, const ParetoArchive& archive)>;

// Evolutionary loop: a repaired sparse population (always including the empty
// mix), binary-tournament selection on dominance, uniform crossover and
// integer +/-1 mutation over the count maps, repair, one simulation per
// evaluation, elitist non-dominated archiving. Offspring evaluation fans out
// over OpenMP workers; results do not depend on the worker count.
EvolveResult evolve(const scengen::Scenario& scenario, const fleet::FleetCatalog& cat,
                    const dispatch::DispatchConfig& dcfg, const SolverConfig& scfg,
                    const GenerationObserver& observer = {});

} // namespace modfleet::moea

#endif
