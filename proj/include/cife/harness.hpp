#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cife/dataset.hpp"
#include "cife/protocol.hpp"

namespace cife {

// Everything a protocol run needs beyond the dataset. Full-paper values are
// the defaults; `scale` shrinks candidates / population / generations
// proportionally for quick runs, explicit fields override individually.
struct RunOptions {
    std::size_t pool_size = 150;
    std::size_t folds = 6;
    std::uint64_t seed = 0;
    std::size_t candidates = 3000;
    double scale = 1.0;
    unsigned workers = 0;  // 0 = hardware concurrency

    // fitness
    double fp_alpha = 0.45;
    double fp_beta = 0.45;
    double fp_gamma = 0.10;
    EvalSplit fitness_split = EvalSplit::Val2;
    DiversityNorm diversity_norm = DiversityNorm::PairCount;

    // tuning initialization
    double tuning_alpha = 0.5;
    bool tuning_rescale = true;

    // evolvers
    std::size_t population_size = 500;
    std::size_t max_generations = 250;
    double stagnation_fraction = 0.20;
    double elitism = 0.40;
    double mutation_rate = 0.05;
    double crossover_rate = 0.30;
    double umda_initial = 0.50;
    double umda_upper = 0.95;
    double umda_lower = 0.05;
    double umda_selection = 0.50;
    bool umda_use_init_population = true;

    std::size_t effective_candidates() const;
    std::size_t effective_population() const;
    std::size_t effective_generations() const;
    unsigned effective_workers() const;

    EvolverConfig evolver_config(Algorithm algorithm, std::uint64_t evolve_seed) const;
    FitnessSpec fitness_spec(FitnessKind kind) const;
};

struct FoldResult {
    std::size_t fold = 0;
    double test_accuracy = 0.0;
    std::size_t ensemble_size = 0;
    std::size_t generations_run = 0;
    double best_fitness = 0.0;  // on the fitness split
    std::string best_mask_hex;
    std::uint64_t pool_checksum = 0;
    std::vector<double> trace_best;
    std::vector<double> trace_mean;
    std::vector<double> trace_best_found;
    double wall_seconds = 0.0;  // protocol-specific work
    double pool_seconds = 0.0;  // pool + pair table construction
};

struct Aggregate {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
};

Aggregate aggregate_of(std::vector<double> values);

struct RunReport {
    std::string protocol;
    std::string dataset;
    std::size_t pool_size = 0;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    std::size_t candidates = 0;
    std::vector<FoldResult> fold_results;
    Aggregate accuracy;
    double mean_ensemble_size = 0.0;
    std::string error;  // set when the protocol failed; fold_results then empty

    // Wall-clock fields are skipped unless include_timing so that reports of
    // identical runs compare byte-for-byte.
    nlohmann::json to_json(bool include_timing = false) const;
};

RunReport run_protocol(const ProtocolSpec& spec, const Dataset& ds, const RunOptions& options);

// All 24 protocols over the same folds; pools are built once per
// (classifier mode, fold) and shared, so I/F/E comparisons are isolated.
std::vector<RunReport> run_grid(const Dataset& ds, const RunOptions& options);

std::string grid_to_json(const std::vector<RunReport>& reports, const Dataset& ds,
                         const RunOptions& options, bool include_timing = false);

struct SweepResult {
    std::vector<std::size_t> sizes;
    std::vector<double> median_accuracy;          // per size, median over the 24 protocols
    std::vector<std::vector<RunReport>> reports;  // per size
};

SweepResult pool_size_sweep(const Dataset& ds, const std::vector<std::size_t>& sizes,
                            const RunOptions& options);

std::string sweep_to_json(const SweepResult& sweep, const Dataset& ds);

// method: "kappa" (budget classifiers, lowest-kappa pairs first) or "bagging"
// (whole pool). Uses the same pools and report schema as protocol runs.
RunReport run_baseline(const std::string& method, std::size_t budget, const Dataset& ds,
                       const RunOptions& options);

// The exact pool a protocol run constructs for a given fold (identical seed
// derivation); for pool export and shared-pool experiments.
ClassifierPool build_protocol_pool(PoolMode mode, const Dataset& ds, const RunOptions& options,
                                   std::size_t fold);

}  // namespace cife
