#include "modfleet/moea.hpp"

#include <algorithm>

#include <omp.h>

#include <json.hpp>

#include "modfleet/common.hpp"

namespace modfleet::moea {

void SolverConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    if (generations < 0) throw std::invalid_argument("generations must be >= 0");
    if (mutation_rate < 0 || mutation_rate > 1 || crossover_rate < 0 || crossover_rate > 1)
        throw std::invalid_argument("rates must lie in [0,1]");
    for (double e : epsilon)
        if (e < 0) throw std::invalid_argument("epsilon must be non-negative");
    if (init_count_max < 0) throw std::invalid_argument("init_count_max must be >= 0");
}

std::string SolverConfig::to_json() const {
    nlohmann::json j;
    j["population_size"] = population_size;
    j["generations"] = generations;
    j["mutation_rate"] = mutation_rate;
    j["crossover_rate"] = crossover_rate;
    j["epsilon"] = epsilon;
    j["seed"] = seed;
    j["init_count_max"] = init_count_max;
    return j.dump();
}

SolverConfig SolverConfig::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SolverConfig cfg;
    if (j.contains("population_size")) cfg.population_size = j["population_size"].get<int>();
    if (j.contains("generations")) cfg.generations = j["generations"].get<int>();
    if (j.contains("mutation_rate")) cfg.mutation_rate = j["mutation_rate"].get<double>();
    if (j.contains("crossover_rate")) cfg.crossover_rate = j["crossover_rate"].get<double>();
    if (j.contains("epsilon")) {
        auto e = j["epsilon"].get<std::vector<double>>();
        if (e.size() != 3) throw std::invalid_argument("epsilon needs 3 entries");
        std::copy(e.begin(), e.end(), cfg.epsilon.begin());
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("init_count_max")) cfg.init_count_max = j["init_count_max"].get<int>();
    cfg.validate();
    return cfg;
}

bool dominates(const Objectives& a, const Objectives& b,
               const std::array<double, 3>& epsilon) {
    bool strict = false;
    if (a.F > b.F + epsilon[0]) return false;
    if (a.F < b.F + epsilon[0]) strict = true;
    if (a.diversity > b.diversity + epsilon[1]) return false;
    if (a.diversity < b.diversity + epsilon[1]) strict = true;
    if (a.lane > b.lane + epsilon[2]) return false;
    if (a.lane < b.lane + epsilon[2]) strict = true;
    return strict;
}

bool objective_order(const Individual& a, const Individual& b) {
    if (a.objectives.F != b.objectives.F) return a.objectives.F < b.objectives.F;
    if (a.objectives.lane != b.objectives.lane) return a.objectives.lane < b.objectives.lane;
    if (a.objectives.diversity != b.objectives.diversity)
        return a.objectives.diversity < b.objectives.diversity;
    return a.mix.to_json() < b.mix.to_json();
}

bool ParetoArchive::insert(Individual candidate) {
    for (const auto& m : members_)
        if (dominates(m.objectives, candidate.objectives, epsilon_)) return false;
    // Exact duplicates add nothing.
    for (const auto& m : members_)
        if (m.objectives.F == candidate.objectives.F &&
            m.objectives.diversity == candidate.objectives.diversity &&
            m.objectives.lane == candidate.objectives.lane &&
            m.mix.to_json() == candidate.mix.to_json())
            return false;
    members_.erase(std::remove_if(members_.begin(), members_.end(),
                                  [&](const Individual& m) {
                                      return dominates(candidate.objectives, m.objectives,
                                                       epsilon_);
                                  }),
                   members_.end());
    members_.push_back(std::move(candidate));
    return true;
}

std::string ParetoArchive::to_json() const {
    auto sorted = members_;
    std::sort(sorted.begin(), sorted.end(), objective_order);
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& m : sorted) {
        nlohmann::json mj;
        mj["mix"] = nlohmann::json::parse(m.mix.to_json());
        mj["objectives"] = {{"F", m.objectives.F},
                            {"diversity", m.objectives.diversity},
                            {"lane", m.objectives.lane}};
        mj["feasible"] = m.feasible;
        arr.push_back(mj);
    }
    j["members"] = arr;
    j["epsilon"] = epsilon_;
    return j.dump();
}

const Individual& best_cost(const ParetoArchive& archive) {
    if (archive.empty()) throw std::runtime_error("empty archive");
    const Individual* best = &archive.members().front();
    for (const auto& m : archive.members())
        if (objective_order(m, *best)) best = &m;
    return *best;
}

namespace {

// Count keys in a fixed catalog order: vehicle types then module types.
std::vector<std::string> genome_keys(const fleet::FleetCatalog& cat) {
    std::vector<std::string> keys;
    for (const auto& vt : cat.vehicle_types) keys.push_back(vt.id);
    for (const auto& mt : cat.module_types) keys.push_back(mt.id);
    return keys;
}

long long& count_slot(fleet::FleetMix& mix, const fleet::FleetCatalog& cat,
                      const std::string& key) {
    for (const auto& vt : cat.vehicle_types)
        if (vt.id == key) return mix.vehicle_counts[key];
    return mix.module_counts[key];
}

long long count_of(const fleet::FleetMix& mix, const fleet::FleetCatalog& cat,
                   const std::string& key) {
    for (const auto& vt : cat.vehicle_types) {
        if (vt.id != key) continue;
        auto it = mix.vehicle_counts.find(key);
        return it == mix.vehicle_counts.end() ? 0 : it->second;
    }
    auto it = mix.module_counts.find(key);
    return it == mix.module_counts.end() ? 0 : it->second;
}

struct Evaluation {
    bool ok = false;
    Individual individual;
};

Evaluation evaluate_mix(const fleet::FleetMix& genome, const scengen::Scenario& scenario,
                        const fleet::FleetCatalog& cat,
                        const dispatch::DispatchConfig& dcfg) {
    Evaluation out;
    auto repaired = dispatch::min_feasible_additions(scenario, genome, cat, dcfg);
    if (!repaired.ok) return out;
    auto result = dispatch::simulate(scenario, repaired.mix, cat, dcfg);
    if (!result.feasible) return out;
    out.ok = true;
    out.individual.mix = std::move(repaired.mix);
    out.individual.objectives.F = result.objective_F;
    out.individual.objectives.diversity = fleet::diversity(out.individual.mix);
    out.individual.objectives.lane = fleet::lane_meters(out.individual.mix, cat);
    out.individual.feasible = true;
    return out;
}

const Individual& tournament(const std::vector<Individual>& population, Rng& rng,
                             const std::array<double, 3>& epsilon) {
    int i = static_cast<int>(rng.uniform_int(0, static_cast<long long>(population.size()) - 1));
    int j = static_cast<int>(rng.uniform_int(0, static_cast<long long>(population.size()) - 1));
    const Individual& a = population[i];
    const Individual& b = population[j];
    if (dominates(a.objectives, b.objectives, epsilon)) return a;
    if (dominates(b.objectives, a.objectives, epsilon)) return b;
    return objective_order(a, b) ? a : b; // ties by lower F
}

fleet::FleetMix breed(const std::vector<Individual>& population, Rng& rng,
                      const fleet::FleetCatalog& cat, const SolverConfig& scfg,
                      const std::vector<std::string>& keys) {
    const Individual& p1 = tournament(population, rng, scfg.epsilon);
    const Individual& p2 = tournament(population, rng, scfg.epsilon);

    // Children are count genomes; homes are reassigned by repair.
    fleet::FleetMix child = fleet::FleetMix::zero(cat);
    bool cross = rng.bernoulli(scfg.crossover_rate);
    for (const auto& key : keys) {
        const fleet::FleetMix& src =
            (cross && rng.bernoulli(0.5)) ? p2.mix : p1.mix;
        count_slot(child, cat, key) = count_of(src, cat, key);
    }
    for (const auto& key : keys) {
        if (!rng.bernoulli(scfg.mutation_rate)) continue;
        long long& slot = count_slot(child, cat, key);
        slot += rng.bernoulli(0.5) ? 1 : -1;
        if (slot < 0) slot = 0;
    }
    return child;
}

} // namespace

EvolveResult evolve(const scengen::Scenario& scenario, const fleet::FleetCatalog& cat,
                    const dispatch::DispatchConfig& dcfg, const SolverConfig& scfg,
                    const GenerationObserver& observer) {
    scfg.validate();
    cat.validate();
    EvolveResult out;
    out.archive = ParetoArchive(scfg.epsilon);
    Rng rng(scfg.seed);
    auto keys = genome_keys(cat);

    // Sparse initial genomes; the first is always the empty mix.
    std::vector<fleet::FleetMix> genomes;
    genomes.push_back(fleet::FleetMix::zero(cat));
    for (int i = 1; i < scfg.population_size; ++i) {
        auto mix = fleet::FleetMix::zero(cat);
        for (const auto& key : keys)
            count_slot(mix, cat, key) = rng.uniform_int(0, scfg.init_count_max);
        genomes.push_back(std::move(mix));
    }

    std::vector<Individual> population;
    auto evaluate_all = [&](const std::vector<fleet::FleetMix>& batch) {
        std::vector<Evaluation> evals(batch.size());
        int workers = worker_limit();
        if (workers == 1) {
            for (size_t i = 0; i < batch.size(); ++i)
                evals[i] = evaluate_mix(batch[i], scenario, cat, dcfg);
        } else {
            int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (size_t i = 0; i < batch.size(); ++i)
                evals[i] = evaluate_mix(batch[i], scenario, cat, dcfg);
        }
        std::vector<Individual> kept;
        for (auto& e : evals) {
            ++out.evaluations;
            if (!e.ok) {
                ++out.repair_failures;
                continue;
            }
            kept.push_back(std::move(e.individual));
        }
        return kept;
    };

    population = evaluate_all(genomes);
    if (population.empty())
        throw std::runtime_error("no feasible individual could be constructed");
    for (const auto& ind : population) out.archive.insert(ind);
    if (observer) observer(0, out.archive);

    for (int gen = 1; gen <= scfg.generations; ++gen) {
        std::vector<fleet::FleetMix> offspring;
        offspring.reserve(scfg.population_size);
        for (int i = 0; i < scfg.population_size; ++i)
            offspring.push_back(breed(population, rng, cat, scfg, keys));
        auto evaluated = evaluate_all(offspring);
        if (!evaluated.empty()) population = std::move(evaluated);
        for (const auto& ind : population) out.archive.insert(ind);
        if (observer) observer(gen, out.archive);
    }
    return out;
}

} // namespace modfleet::moea
