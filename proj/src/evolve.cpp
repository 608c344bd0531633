#include "cife/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "cife/parallel.hpp"

namespace cife {

namespace {

constexpr double kRouletteEpsilon = 1e-6;

std::vector<FitnessValue> evaluate_all(const std::vector<EnsembleMask>& population,
                                       const FitnessFn& fitness, unsigned workers) {
    std::vector<FitnessValue> values(population.size());
    parallel_for(population.size(), workers,
                 [&](std::size_t i) { values[i] = fitness(population[i]); });
    return values;
}

// Ascending by fitness, stable within ties. Population order is itself
// deterministic (slots are filled by index whatever the worker count), so the
// sorted order is platform-independent; breaking ties by any mask property
// instead would leak selection pressure into the tie plateaus that coarse
// validation splits produce.
void sort_population(std::vector<EnsembleMask>& population, std::vector<FitnessValue>& values) {
    const std::size_t n = population.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a].value < values[b].value;
    });
    std::vector<EnsembleMask> new_pop(n);
    std::vector<FitnessValue> new_values(n);
    for (std::size_t i = 0; i < n; ++i) {
        new_pop[i] = std::move(population[order[i]]);
        new_values[i] = values[order[i]];
    }
    population = std::move(new_pop);
    values = std::move(new_values);
}

double mean_fitness(const std::vector<FitnessValue>& values) {
    double sum = 0.0;
    for (const auto& v : values) sum += v.value;
    return sum / static_cast<double>(values.size());
}

std::vector<double> cumulative_roulette_weights(const std::vector<FitnessValue>& values) {
    double max_f = values.front().value;
    for (const auto& v : values) max_f = std::max(max_f, v.value);
    std::vector<double> cumulative(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running += max_f - values[i].value + kRouletteEpsilon;
        cumulative[i] = running;
    }
    return cumulative;
}

std::size_t spin(const std::vector<double>& cumulative, Rng& rng) {
    const double r = rng.unit() * cumulative.back();
    const std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

}  // namespace

std::size_t EvolverConfig::stagnation_limit() const {
    return static_cast<std::size_t>(
        std::ceil(stagnation_fraction * static_cast<double>(max_generations)));
}

void EvolverConfig::validate() const {
    if (population_size == 0) throw std::invalid_argument("population size must be positive");
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(stagnation_fraction) || !in_unit(elitism) || !in_unit(mutation_rate) ||
        !in_unit(crossover_rate) || !in_unit(selection_fraction))
        throw std::invalid_argument("evolver rates must lie in [0,1]");
    if (!(lower_bound < initial_probability && initial_probability < upper_bound))
        throw std::invalid_argument("UMDA bounds must satisfy lower < initial < upper");
}

std::size_t ga_select_roulette(const std::vector<double>& fitnesses, Rng& rng) {
    if (fitnesses.empty()) throw std::invalid_argument("roulette over empty population");
    double max_f = *std::max_element(fitnesses.begin(), fitnesses.end());
    std::vector<double> cumulative(fitnesses.size());
    double running = 0.0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        running += max_f - fitnesses[i] + kRouletteEpsilon;
        cumulative[i] = running;
    }
    return spin(cumulative, rng);
}

EnsembleMask ga_crossover_at(const EnsembleMask& p1, const EnsembleMask& p2, std::size_t cut) {
    if (p1.size() != p2.size()) throw std::invalid_argument("crossover: parent size mismatch");
    if (cut < 1 || cut >= p1.size()) throw std::invalid_argument("crossover: cut out of range");
    EnsembleMask child(p1.size());
    for (std::size_t i = 0; i < cut; ++i) child.bits[i] = p1.bits[i];
    for (std::size_t i = cut; i < p2.size(); ++i) child.bits[i] = p2.bits[i];
    return child;
}

EnsembleMask ga_crossover(const EnsembleMask& p1, const EnsembleMask& p2, double crossover_rate,
                          Rng& rng) {
    if (rng.bernoulli(crossover_rate) && p1.size() >= 2) {
        const std::size_t cut = rng.range(1, p1.size() - 1);
        return ga_crossover_at(p1, p2, cut);
    }
    return p1;
}

EnsembleMask ga_mutate(const EnsembleMask& mask, double mutation_rate, Rng& rng,
                       std::size_t repair_index) {
    EnsembleMask out = mask;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (rng.bernoulli(mutation_rate)) out.bits[i] ^= 1;
    repair_empty(out, repair_index);
    return out;
}

EnsembleMask umda_sample(const ProbabilityModel& model, Rng& rng, std::size_t repair_index) {
    EnsembleMask mask(model.p.size());
    for (std::size_t i = 0; i < model.p.size(); ++i) mask.bits[i] = rng.bernoulli(model.p[i]);
    repair_empty(mask, repair_index);
    return mask;
}

ProbabilityModel umda_update(const std::vector<EnsembleMask>& sorted_population,
                             const EvolverConfig& config) {
    if (sorted_population.empty()) throw std::invalid_argument("umda_update: empty population");
    const std::size_t n = sorted_population.front().size();
    const std::size_t mu = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(config.selection_fraction *
                                                 static_cast<double>(sorted_population.size()))));
    ProbabilityModel model;
    model.p.assign(n, 0.0);
    for (std::size_t s = 0; s < mu; ++s)
        for (std::size_t i = 0; i < n; ++i) model.p[i] += sorted_population[s].bits[i];
    for (double& p : model.p) {
        p /= static_cast<double>(mu);
        p = std::clamp(p, config.lower_bound, config.upper_bound);
    }
    return model;
}

ProbabilityModel umda_update(const std::vector<EnsembleMask>& population,
                             const std::vector<FitnessValue>& fitnesses,
                             const EvolverConfig& config) {
    std::vector<EnsembleMask> pop = population;
    std::vector<FitnessValue> values = fitnesses;
    sort_population(pop, values);
    return umda_update(pop, config);
}

namespace {

struct LoopState {
    EvolutionTrace trace;
    FitnessValue best_value;
    EnsembleMask best_mask;
    std::size_t stagnant = 0;
    bool initialized = false;

    // Returns true when the best-found fitness improved.
    void observe(const std::vector<EnsembleMask>& pop, const std::vector<FitnessValue>& values,
                 double model_min, double model_max) {
        const bool improved = !initialized || values.front().value < best_value.value;
        if (improved) {
            best_value = values.front();
            best_mask = pop.front();
            stagnant = initialized ? 0 : stagnant;
        } else {
            ++stagnant;
        }
        initialized = true;
        trace.generations.push_back({values.front().value, mean_fitness(values),
                                     best_value.value, model_min, model_max});
    }
};

}  // namespace

EvolutionTrace ga_evolve(std::vector<EnsembleMask> population, const FitnessFn& fitness,
                         const EvolverConfig& config) {
    config.validate();
    if (population.size() != config.population_size)
        throw std::invalid_argument("ga_evolve: initial population size mismatch");
    for (auto& m : population) repair_empty(m, config.repair_index);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto values = evaluate_all(population, fitness, config.workers);
    sort_population(population, values);

    LoopState state;
    state.observe(population, values, nan, nan);
    state.trace.termination_reason = "max_generations";

    const std::size_t elite_count = std::min<std::size_t>(
        config.population_size,
        static_cast<std::size_t>(std::ceil(config.elitism * config.population_size)));
    const std::size_t stagnation_limit = config.stagnation_limit();

    for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
        const std::vector<double> cumulative = cumulative_roulette_weights(values);
        std::vector<EnsembleMask> next(config.population_size);
        std::vector<FitnessValue> next_values(config.population_size);
        for (std::size_t e = 0; e < elite_count; ++e) {
            next[e] = population[e];
            next_values[e] = values[e];
        }
        parallel_for(config.population_size - elite_count, config.workers, [&](std::size_t slot) {
            const std::size_t j = elite_count + slot;
            Rng rng(derive_seed(config.seed, "ga-offspring", {gen, j}));
            const std::size_t p1 = spin(cumulative, rng);
            const std::size_t p2 = spin(cumulative, rng);
            EnsembleMask child =
                ga_crossover(population[p1], population[p2], config.crossover_rate, rng);
            child = ga_mutate(child, config.mutation_rate, rng, config.repair_index);
            next_values[j] = fitness(child);
            next[j] = std::move(child);
        });
        population = std::move(next);
        values = std::move(next_values);
        sort_population(population, values);
        state.observe(population, values, nan, nan);
        state.trace.generations_run = gen;
        if (state.stagnant >= stagnation_limit) {
            state.trace.termination_reason = "stagnation";
            break;
        }
    }

    state.trace.best_mask = state.best_mask;
    state.trace.best_value = state.best_value;
    return state.trace;
}

EvolutionTrace umda_evolve(std::vector<EnsembleMask> population, const FitnessFn& fitness,
                           const EvolverConfig& config) {
    config.validate();
    if (population.size() != config.population_size)
        throw std::invalid_argument("umda_evolve: initial population size mismatch");
    if (population.empty()) throw std::invalid_argument("umda_evolve: empty population");
    const std::size_t n = population.front().size();

    ProbabilityModel model;
    if (config.umda_use_init_population) {
        for (auto& m : population) repair_empty(m, config.repair_index);
    } else {
        model.p.assign(n, config.initial_probability);
        parallel_for(config.population_size, config.workers, [&](std::size_t j) {
            Rng rng(derive_seed(config.seed, "umda-sample", {0, j}));
            population[j] = umda_sample(model, rng, config.repair_index);
        });
    }

    auto values = evaluate_all(population, fitness, config.workers);
    sort_population(population, values);
    model = umda_update(population, config);

    auto check_bounds = [&](const ProbabilityModel& m) {
        for (double p : m.p)
            if (p < config.lower_bound - 1e-15 || p > config.upper_bound + 1e-15)
                throw std::logic_error("UMDA marginal escaped its bounds");
    };
    check_bounds(model);
    auto model_min = [&] { return *std::min_element(model.p.begin(), model.p.end()); };
    auto model_max = [&] { return *std::max_element(model.p.begin(), model.p.end()); };

    LoopState state;
    state.observe(population, values, model_min(), model_max());
    state.trace.termination_reason = "max_generations";

    const std::size_t stagnation_limit = config.stagnation_limit();
    for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
        parallel_for(config.population_size, config.workers, [&](std::size_t j) {
            Rng rng(derive_seed(config.seed, "umda-sample", {gen, j}));
            population[j] = umda_sample(model, rng, config.repair_index);
        });
        values = evaluate_all(population, fitness, config.workers);
        sort_population(population, values);
        model = umda_update(population, config);
        check_bounds(model);
        state.observe(population, values, model_min(), model_max());
        state.trace.generations_run = gen;
        if (state.stagnant >= stagnation_limit) {
            state.trace.termination_reason = "stagnation";
            break;
        }
    }

    state.trace.best_mask = state.best_mask;
    state.trace.best_value = state.best_value;
    return state.trace;
}

EvolutionTrace evolve(Algorithm algorithm, std::vector<EnsembleMask> init_population,
                      const FitnessFn& fitness, const EvolverConfig& config) {
    return algorithm == Algorithm::GA ? ga_evolve(std::move(init_population), fitness, config)
                                      : umda_evolve(std::move(init_population), fitness, config);
}

std::string EvolutionTrace::to_json() const {
    nlohmann::json j;
    j["generations_run"] = generations_run;
    j["termination_reason"] = termination_reason;
    j["best_mask_hex"] = best_mask.to_hex();
    j["best_fitness"] = best_value.value;
    auto rows = nlohmann::json::array();
    for (const auto& g : generations) {
        nlohmann::json row = {{"best", g.best_fitness},
                              {"mean", g.mean_fitness},
                              {"best_found", g.best_found}};
        if (std::isfinite(g.model_min)) {
            row["model_min"] = g.model_min;
            row["model_max"] = g.model_max;
        }
        rows.push_back(std::move(row));
    }
    j["trace"] = std::move(rows);
    return j.dump();
}

}  // namespace cife
