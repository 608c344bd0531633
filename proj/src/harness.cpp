#include "cife/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cife/baselines.hpp"
#include "cife/ensemble.hpp"
#include "cife/parallel.hpp"
#include "cife/population.hpp"
#include "cife/rng.hpp"

namespace cife {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string checksum_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::size_t scaled(std::size_t full, double scale, std::size_t floor_value) {
    if (scale >= 1.0) return full;
    const auto v = static_cast<std::size_t>(std::llround(scale * static_cast<double>(full)));
    return std::max(v, floor_value);
}

}  // namespace

std::size_t RunOptions::effective_candidates() const {
    return std::max(scaled(candidates, scale, 1), pool_size);
}

std::size_t RunOptions::effective_population() const {
    return scaled(population_size, scale, 10);
}

std::size_t RunOptions::effective_generations() const {
    return scaled(max_generations, scale, 5);
}

unsigned RunOptions::effective_workers() const {
    return workers == 0 ? default_workers() : workers;
}

EvolverConfig RunOptions::evolver_config(Algorithm algorithm, std::uint64_t evolve_seed) const {
    EvolverConfig cfg;
    cfg.algorithm = algorithm;
    cfg.population_size = effective_population();
    cfg.max_generations = effective_generations();
    cfg.stagnation_fraction = stagnation_fraction;
    cfg.elitism = elitism;
    cfg.mutation_rate = mutation_rate;
    cfg.crossover_rate = crossover_rate;
    cfg.initial_probability = umda_initial;
    cfg.upper_bound = umda_upper;
    cfg.lower_bound = umda_lower;
    cfg.selection_fraction = umda_selection;
    cfg.umda_use_init_population = umda_use_init_population;
    cfg.repair_index = 0;
    cfg.workers = effective_workers();
    cfg.seed = evolve_seed;
    return cfg;
}

FitnessSpec RunOptions::fitness_spec(FitnessKind kind) const {
    FitnessSpec spec;
    spec.kind = kind;
    spec.alpha = fp_alpha;
    spec.beta = fp_beta;
    spec.gamma = fp_gamma;
    spec.eval_split = fitness_split;
    spec.diversity_norm = diversity_norm;
    return spec;
}

Aggregate aggregate_of(std::vector<double> values) {
    Aggregate agg;
    if (values.empty()) return agg;
    double sum = 0.0;
    for (double v : values) sum += v;
    agg.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - agg.mean) * (v - agg.mean);
    agg.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    agg.median = values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
    return agg;
}

namespace {

struct FoldContext {
    ClassifierPool pool;
    PairDiversityTable pairs;
    double build_seconds = 0.0;
};

FoldContext build_fold_context(PoolMode mode, std::size_t fold_index, const FoldSplit& split,
                               const Dataset& ds, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    FoldContext ctx;
    ctx.pool = build_pool(mode, split, ds, options.pool_size, options.effective_candidates(),
                          derive_seed(options.seed, "pool",
                                      {static_cast<std::uint64_t>(pool_mode_char(mode)),
                                       fold_index}),
                          options.effective_workers());
    ctx.pairs = build_pair_table(ctx.pool.val1, options.effective_workers());
    ctx.build_seconds = seconds_since(t0);
    return ctx;
}

FoldResult run_protocol_fold(const ProtocolSpec& spec, std::size_t fold_index,
                             const FoldContext& ctx, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t proto_tag = fnv1a64(spec.name());
    const std::uint64_t init_seed =
        derive_seed(options.seed, "init", {fold_index, proto_tag});

    std::vector<EnsembleMask> init;
    if (spec.init == InitMode::A) {
        init = random_population(options.effective_population(), options.pool_size, init_seed);
    } else {
        TuningOptions topt;
        topt.alpha = options.tuning_alpha;
        topt.rescale_combined = options.tuning_rescale;
        init = tuning_population(ctx.pool.val1, ctx.pairs, options.effective_population(),
                                 init_seed, topt);
    }

    const LabelMatrix& eval_lm =
        options.fitness_split == EvalSplit::Val2 ? ctx.pool.val2 : ctx.pool.val1;
    const FitnessFn fitness = make_fitness(options.fitness_spec(spec.fitness), eval_lm, &ctx.pairs);
    const EvolverConfig cfg = options.evolver_config(
        spec.algorithm, derive_seed(options.seed, "evolve", {fold_index, proto_tag}));
    const EvolutionTrace trace = evolve(spec.algorithm, std::move(init), fitness, cfg);
    const EnsembleResult result = evaluate(trace.best_mask, ctx.pool.test);

    FoldResult fr;
    fr.fold = fold_index;
    fr.test_accuracy = result.test_accuracy;
    fr.ensemble_size = result.ensemble_size;
    fr.generations_run = trace.generations_run;
    fr.best_fitness = trace.best_value.value;
    fr.best_mask_hex = trace.best_mask.to_hex();
    fr.pool_checksum = ctx.pool.checksum;
    fr.trace_best.reserve(trace.generations.size());
    for (const auto& g : trace.generations) {
        fr.trace_best.push_back(g.best_fitness);
        fr.trace_mean.push_back(g.mean_fitness);
        fr.trace_best_found.push_back(g.best_found);
    }
    fr.pool_seconds = ctx.build_seconds;
    fr.wall_seconds = seconds_since(t0);
    return fr;
}

RunReport finalize_report(RunReport report) {
    std::vector<double> accs;
    double size_sum = 0.0;
    for (const auto& fr : report.fold_results) {
        accs.push_back(fr.test_accuracy);
        size_sum += static_cast<double>(fr.ensemble_size);
    }
    if (!accs.empty()) {
        report.accuracy = aggregate_of(accs);
        report.mean_ensemble_size = size_sum / static_cast<double>(accs.size());
    }
    return report;
}

RunReport report_stub(const std::string& protocol, const Dataset& ds, const RunOptions& options) {
    RunReport report;
    report.protocol = protocol;
    report.dataset = ds.name;
    report.pool_size = options.pool_size;
    report.folds = options.folds;
    report.seed = options.seed;
    report.candidates = options.effective_candidates();
    return report;
}

}  // namespace

RunReport run_protocol(const ProtocolSpec& spec, const Dataset& ds, const RunOptions& options) {
    if (options.pool_size < 2)
        throw std::invalid_argument("run_protocol: pool size must be at least 2");
    const auto folds = make_folds(ds, options.folds, derive_seed(options.seed, "folds"));
    RunReport report = report_stub(spec.name(), ds, options);
    for (std::size_t r = 0; r < folds.size(); ++r) {
        const FoldContext ctx = build_fold_context(spec.classifiers, r, folds[r], ds, options);
        report.fold_results.push_back(run_protocol_fold(spec, r, ctx, options));
    }
    return finalize_report(std::move(report));
}

std::vector<RunReport> run_grid(const Dataset& ds, const RunOptions& options) {
    if (options.pool_size < 2)
        throw std::invalid_argument("run_grid: pool size must be at least 2");
    const auto folds = make_folds(ds, options.folds, derive_seed(options.seed, "folds"));
    const auto protocols = all_protocols();

    std::vector<RunReport> reports;
    reports.reserve(protocols.size());
    for (const auto& spec : protocols) reports.push_back(report_stub(spec.name(), ds, options));

    for (std::size_t r = 0; r < folds.size(); ++r) {
        const FoldContext ctx_p = build_fold_context(PoolMode::P, r, folds[r], ds, options);
        const FoldContext ctx_m = build_fold_context(PoolMode::M, r, folds[r], ds, options);
        for (std::size_t s = 0; s < protocols.size(); ++s) {
            if (!reports[s].error.empty()) continue;
            const FoldContext& ctx =
                protocols[s].classifiers == PoolMode::P ? ctx_p : ctx_m;
            try {
                reports[s].fold_results.push_back(
                    run_protocol_fold(protocols[s], r, ctx, options));
            } catch (const std::exception& e) {
                reports[s].error = "fold " + std::to_string(r) + ": " + e.what();
                reports[s].fold_results.clear();
            }
        }
    }
    for (auto& report : reports) report = finalize_report(std::move(report));
    return reports;
}

nlohmann::json RunReport::to_json(bool include_timing) const {
    nlohmann::json j;
    j["format"] = "cife-report";
    j["version"] = 1;
    j["protocol"] = protocol;
    j["dataset"] = dataset;
    j["pool_size"] = pool_size;
    j["folds"] = folds;
    j["seed"] = seed;
    j["candidates"] = candidates;
    if (!error.empty()) j["error"] = error;
    auto fold_array = nlohmann::json::array();
    for (const auto& fr : fold_results) {
        nlohmann::json f;
        f["fold"] = fr.fold;
        f["test_accuracy"] = fr.test_accuracy;
        f["ensemble_size"] = fr.ensemble_size;
        f["generations_run"] = fr.generations_run;
        f["best_fitness"] = fr.best_fitness;
        f["best_mask_hex"] = fr.best_mask_hex;
        f["pool_checksum"] = checksum_hex(fr.pool_checksum);
        f["trace"] = {{"best", fr.trace_best},
                      {"mean", fr.trace_mean},
                      {"best_found", fr.trace_best_found}};
        if (include_timing) {
            f["wall_seconds"] = fr.wall_seconds;
            f["pool_seconds"] = fr.pool_seconds;
        }
        fold_array.push_back(std::move(f));
    }
    j["fold_results"] = std::move(fold_array);
    j["aggregate"] = {{"accuracy_mean", accuracy.mean},
                      {"accuracy_median", accuracy.median},
                      {"accuracy_std", accuracy.stddev},
                      {"ensemble_size_mean", mean_ensemble_size}};
    return j;
}

std::string grid_to_json(const std::vector<RunReport>& reports, const Dataset& ds,
                         const RunOptions& options, bool include_timing) {
    nlohmann::json j;
    j["format"] = "cife-grid";
    j["version"] = 1;
    j["dataset"] = ds.name;
    j["pool_size"] = options.pool_size;
    j["folds"] = options.folds;
    j["seed"] = options.seed;
    j["candidates"] = options.effective_candidates();
    auto arr = nlohmann::json::array();
    for (const auto& report : reports) arr.push_back(report.to_json(include_timing));
    j["reports"] = std::move(arr);
    return j.dump(2) + "\n";
}

SweepResult pool_size_sweep(const Dataset& ds, const std::vector<std::size_t>& sizes,
                            const RunOptions& options) {
    if (sizes.empty()) throw std::invalid_argument("pool_size_sweep: no sizes given");
    SweepResult sweep;
    for (std::size_t size : sizes) {
        RunOptions local = options;
        local.pool_size = size;
        auto reports = run_grid(ds, local);
        std::vector<double> protocol_means;
        for (const auto& report : reports)
            if (report.error.empty()) protocol_means.push_back(report.accuracy.mean);
        sweep.sizes.push_back(size);
        sweep.median_accuracy.push_back(aggregate_of(protocol_means).median);
        sweep.reports.push_back(std::move(reports));
    }
    return sweep;
}

std::string sweep_to_json(const SweepResult& sweep, const Dataset& ds) {
    nlohmann::json j;
    j["format"] = "cife-sweep";
    j["version"] = 1;
    j["dataset"] = ds.name;
    j["sizes"] = sweep.sizes;
    j["median_accuracy"] = sweep.median_accuracy;
    return j.dump(2) + "\n";
}

ClassifierPool build_protocol_pool(PoolMode mode, const Dataset& ds, const RunOptions& options,
                                   std::size_t fold) {
    const auto folds = make_folds(ds, options.folds, derive_seed(options.seed, "folds"));
    if (fold >= folds.size()) throw std::invalid_argument("fold index out of range");
    return build_fold_context(mode, fold, folds[fold], ds, options).pool;
}

RunReport run_baseline(const std::string& method, std::size_t budget, const Dataset& ds,
                       const RunOptions& options) {
    if (method != "kappa" && method != "bagging")
        throw std::invalid_argument("unknown baseline '" + method + "' (kappa|bagging)");
    const auto folds = make_folds(ds, options.folds, derive_seed(options.seed, "folds"));
    RunReport report = report_stub(
        method == "kappa" ? "KAPPA-" + std::to_string(budget) : "BAGGING", ds, options);
    for (std::size_t r = 0; r < folds.size(); ++r) {
        // baselines share the protocol pools (mode P, same seed derivation)
        const FoldContext ctx = build_fold_context(PoolMode::P, r, folds[r], ds, options);
        const auto t0 = std::chrono::steady_clock::now();
        EnsembleResult result;
        if (method == "kappa") {
            const EnsembleMask mask =
                kappa_prune(ctx.pool.val1, budget, options.effective_workers());
            result = evaluate(mask, ctx.pool.test);
        } else {
            result = bagging_full(ctx.pool.test);
        }
        FoldResult fr;
        fr.fold = r;
        fr.test_accuracy = result.test_accuracy;
        fr.ensemble_size = result.ensemble_size;
        fr.best_mask_hex = result.mask.to_hex();
        fr.pool_checksum = ctx.pool.checksum;
        fr.pool_seconds = ctx.build_seconds;
        fr.wall_seconds = seconds_since(t0);
        report.fold_results.push_back(std::move(fr));
    }
    return finalize_report(std::move(report));
}

}  // namespace cife
