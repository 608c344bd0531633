#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cife/fitness.hpp"
#include "cife/mask.hpp"
#include "cife/rng.hpp"

namespace cife {

enum class Algorithm { GA, UMDA };

struct EvolverConfig {
    Algorithm algorithm = Algorithm::GA;
    std::size_t population_size = 500;
    std::size_t max_generations = 250;
    double stagnation_fraction = 0.20;
    // GA
    double elitism = 0.40;
    double mutation_rate = 0.05;
    double crossover_rate = 0.30;
    // UMDA
    double initial_probability = 0.50;
    double upper_bound = 0.95;
    double lower_bound = 0.05;
    double selection_fraction = 0.50;
    bool umda_use_init_population = true;  // plain UMDA from p0 when false

    std::size_t repair_index = 0;  // bit set when an individual goes all-zero
    unsigned workers = 1;
    std::uint64_t seed = 0;

    std::size_t stagnation_limit() const;
    void validate() const;
};

// Marginal probability of sampling 1 at each position, kept inside
// [lower_bound, upper_bound] after every update.
struct ProbabilityModel {
    std::vector<double> p;
};

struct GenerationStats {
    double best_fitness = 0.0;  // best of the current population
    double mean_fitness = 0.0;
    double best_found = 0.0;  // running minimum, non-increasing
    double model_min = std::numeric_limits<double>::quiet_NaN();  // UMDA only
    double model_max = std::numeric_limits<double>::quiet_NaN();
};

struct EvolutionTrace {
    std::vector<GenerationStats> generations;  // entry 0 = initial population
    EnsembleMask best_mask;
    FitnessValue best_value;
    std::size_t generations_run = 0;  // evolved generations beyond the initial one
    std::string termination_reason;   // "max_generations" | "stagnation"

    std::string to_json() const;
};

// Minimization roulette: selection weight (max_f - f + 1e-6).
std::size_t ga_select_roulette(const std::vector<double>& fitnesses, Rng& rng);

// Single-point crossover mechanics with an explicit cut in [1, n-1].
EnsembleMask ga_crossover_at(const EnsembleMask& p1, const EnsembleMask& p2, std::size_t cut);

// Applies crossover with probability crossover_rate (else copies parent 1).
EnsembleMask ga_crossover(const EnsembleMask& p1, const EnsembleMask& p2, double crossover_rate,
                          Rng& rng);

EnsembleMask ga_mutate(const EnsembleMask& mask, double mutation_rate, Rng& rng,
                       std::size_t repair_index = 0);

EvolutionTrace ga_evolve(std::vector<EnsembleMask> init_population, const FitnessFn& fitness,
                         const EvolverConfig& config);

EnsembleMask umda_sample(const ProbabilityModel& model, Rng& rng, std::size_t repair_index = 0);

// Marginals from the fittest selection_fraction of the population, clamped to
// the margin bounds. The overload taking fitness values sorts internally.
ProbabilityModel umda_update(const std::vector<EnsembleMask>& sorted_population,
                             const EvolverConfig& config);
ProbabilityModel umda_update(const std::vector<EnsembleMask>& population,
                             const std::vector<FitnessValue>& fitnesses,
                             const EvolverConfig& config);

EvolutionTrace umda_evolve(std::vector<EnsembleMask> init_population, const FitnessFn& fitness,
                           const EvolverConfig& config);

EvolutionTrace evolve(Algorithm algorithm, std::vector<EnsembleMask> init_population,
                      const FitnessFn& fitness, const EvolverConfig& config);

}  // namespace cife
