// cife: classifier ensemble selection and fusion experiments.
//
// Subcommands: run, grid, sweep, baseline, stats, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cife/baselines.hpp"
#include "cife/harness.hpp"
#include "cife/pool_io.hpp"
#include "cife/population.hpp"
#include "cife/report_render.hpp"
#include "cife/stats.hpp"

using namespace cife;

namespace {

struct DatasetFlags {
    std::string path;
    int label_col = -1;  // -1 = last column

    Dataset load(std::ostream& warn_to) const {
        std::vector<std::string> warnings;
        const LabelColumn col = label_col < 0
                                    ? LabelColumn::last()
                                    : LabelColumn::at(static_cast<std::size_t>(label_col));
        Dataset ds = load_csv(path, col, &warnings);
        for (const auto& w : warnings) warn_to << "warning: " << w << '\n';
        return ds;
    }
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& flags) {
    cmd->add_option("--dataset", flags.path, "dataset CSV (features + label column)")
        ->required();
    cmd->add_option("--label-col", flags.label_col,
                    "0-based label column position (default: last column)");
}

void add_run_option_flags(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--pool-size", opt.pool_size, "retained pool size |C|");
    cmd->add_option("--folds", opt.folds, "cross-validation fold count");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--candidates", opt.candidates, "bootstrapped candidates per pool");
    cmd->add_option("--scale", opt.scale,
                    "shrink candidates/population/generations by this factor");
    cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware)");
    cmd->add_option("--population", opt.population_size, "evolver population size");
    cmd->add_option("--generations", opt.max_generations, "evolver generation cap");
    cmd->add_option("--stagnation", opt.stagnation_fraction,
                    "stop after this fraction of the generation cap without improvement");
    cmd->add_option("--gamma", opt.fp_gamma, "F_P ensemble-size weight");
    cmd->add_option("--fp-alpha", opt.fp_alpha, "F_P error weight");
    cmd->add_option("--fp-beta", opt.fp_beta, "F_P diversity weight");
    cmd->add_option("--tuning-alpha", opt.tuning_alpha, "tuning rank mix weight");
    std::map<std::string, EvalSplit> splits{{"val1", EvalSplit::Val1}, {"val2", EvalSplit::Val2}};
    cmd->add_option("--fitness-split", opt.fitness_split, "split used by the fitness function")
        ->transform(CLI::CheckedTransformer(splits, CLI::ignore_case));
    std::map<std::string, DiversityNorm> norms{
        {"pairs", DiversityNorm::PairCount}, {"active", DiversityNorm::ActiveCountCompat}};
    cmd->add_option("--diversity-norm", opt.diversity_norm,
                    "d_m denominator: active pair count, or active member count")
        ->transform(CLI::CheckedTransformer(norms, CLI::ignore_case));
    cmd->add_flag("!--tuning-raw", opt.tuning_rescale,
                  "mix the raw [1,32] combined diversity score instead of rescaling to [0,1]");
    cmd->add_flag("!--umda-plain", opt.umda_use_init_population,
                  "start UMDA from flat 0.5 marginals instead of the initial population");
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::string timing_json(const std::vector<RunReport>& reports) {
    nlohmann::json j;
    j["format"] = "cife-timing";
    j["version"] = 1;
    for (const auto& report : reports) {
        nlohmann::json entry;
        double total = 0.0;
        for (const auto& fr : report.fold_results) {
            entry["fold_wall_seconds"].push_back(fr.wall_seconds);
            entry["fold_pool_seconds"].push_back(fr.pool_seconds);
            total += fr.wall_seconds + fr.pool_seconds;
        }
        entry["total_seconds"] = total;
        j["protocols"][report.protocol] = std::move(entry);
    }
    return j.dump(2) + "\n";
}

std::string normalize_name(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classifier ensemble selection and fusion experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI key-value file");

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "run one protocol over k-fold cross-validation");
    DatasetFlags run_ds;
    RunOptions run_opt;
    std::string run_protocol_name{"MTD-UMDA"};
    std::string run_out, folds_out, save_pool_dir, audit_dir;
    bool run_no_timing = false;
    add_dataset_flags(run_cmd, run_ds);
    add_run_option_flags(run_cmd, run_opt);
    run_cmd->add_option("--protocol", run_protocol_name, "protocol name, e.g. MTD-UMDA");
    run_cmd->add_option("--out", run_out, "report JSON path (default: stdout)");
    run_cmd->add_option("--folds-out", folds_out, "export fold assignments as JSON");
    run_cmd->add_option("--save-pool", save_pool_dir, "write per-fold pool JSON files here");
    run_cmd->add_option("--audit-dir", audit_dir,
                        "write fold-0 pair table / ranked list / histogram CSVs here");
    run_cmd->add_flag("--no-timing", run_no_timing, "omit wall-clock fields from the report");

    // ---- grid ----
    auto* grid_cmd = app.add_subcommand("grid", "run all 24 protocols with shared pools");
    DatasetFlags grid_ds;
    RunOptions grid_opt;
    std::string grid_out, grid_timing_out;
    bool grid_timing_inline = false;
    add_dataset_flags(grid_cmd, grid_ds);
    add_run_option_flags(grid_cmd, grid_opt);
    grid_cmd->add_option("--out", grid_out, "grid report JSON path (default: stdout)");
    grid_cmd->add_option("--timing-out", grid_timing_out, "write wall-clock sidecar JSON here");
    grid_cmd->add_flag("--timing", grid_timing_inline,
                       "include wall-clock fields inline (breaks byte-compare determinism)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "grid medians across pool sizes");
    DatasetFlags sweep_ds;
    RunOptions sweep_opt;
    std::vector<std::size_t> sweep_sizes{50, 100, 150, 200, 250};
    std::string sweep_out, sweep_reports_dir;
    add_dataset_flags(sweep_cmd, sweep_ds);
    add_run_option_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--sizes", sweep_sizes, "pool sizes to sweep")->delimiter(',');
    sweep_cmd->add_option("--out", sweep_out, "sweep JSON path (default: stdout)");
    sweep_cmd->add_option("--reports-dir", sweep_reports_dir,
                          "also write the per-size grid reports here");

    // ---- baseline ----
    auto* base_cmd = app.add_subcommand("baseline", "kappa pruning or full-pool bagging");
    DatasetFlags base_ds;
    RunOptions base_opt;
    std::string base_method{"kappa"};
    std::size_t base_budget = 30;
    std::string base_out;
    add_dataset_flags(base_cmd, base_ds);
    add_run_option_flags(base_cmd, base_opt);
    base_cmd->add_option("--method", base_method, "kappa | bagging");
    base_cmd->add_option("--budget", base_budget, "kappa pruning stops at this many classifiers");
    base_cmd->add_option("--out", base_out, "report JSON path (default: stdout)");

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "statistical tests over reports");
    std::vector<std::string> wilcoxon_files;
    stats_cmd->add_option("--wilcoxon", wilcoxon_files,
                          "two report JSONs; paired per-fold test accuracies")
        ->expected(2);

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "render comparison tables / flatten to CSV");
    bool table6 = false;
    std::string ref_path = "data/table6_reference.json";
    std::vector<std::string> table6_add;
    std::string csv_in, report_out;
    double tie_epsilon = 0.05;
    report_cmd->add_flag("--table6", table6, "render the accuracy comparison table");
    report_cmd->add_option("--ref", ref_path, "reference constants JSON");
    report_cmd->add_option("--add", table6_add,
                           "extra column NAME=report.json (median accuracy, percent)");
    report_cmd->add_option("--tie-epsilon", tie_epsilon,
                           "accuracy-point window that counts as a tie");
    report_cmd->add_option("--csv", csv_in, "flatten this report/grid JSON to CSV");
    report_cmd->add_option("--out", report_out, "output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const Dataset ds = run_ds.load(std::cerr);
            const ProtocolSpec spec = parse_protocol(run_protocol_name);
            if (!folds_out.empty()) {
                const auto folds =
                    make_folds(ds, run_opt.folds, derive_seed(run_opt.seed, "folds"));
                write_or_print(folds_to_json(folds), folds_out);
            }
            if (!save_pool_dir.empty() || !audit_dir.empty()) {
                namespace fs = std::filesystem;
                if (!save_pool_dir.empty()) fs::create_directories(save_pool_dir);
                if (!audit_dir.empty()) fs::create_directories(audit_dir);
                const std::size_t n_folds = save_pool_dir.empty() ? 1 : run_opt.folds;
                for (std::size_t r = 0; r < n_folds; ++r) {
                    const auto pool = build_protocol_pool(spec.classifiers, ds, run_opt, r);
                    if (!save_pool_dir.empty())
                        save_pool(pool, save_pool_dir + "/pool_fold" + std::to_string(r) +
                                            ".json");
                    if (r == 0 && !audit_dir.empty()) {
                        const auto table = build_pair_table(pool.val1,
                                                            run_opt.effective_workers());
                        std::ofstream pairs(audit_dir + "/pair_table.csv");
                        write_pair_table_csv(pairs, table);
                        TuningOptions topt;
                        topt.alpha = run_opt.tuning_alpha;
                        topt.rescale_combined = run_opt.tuning_rescale;
                        const auto art = tuning_artifacts(pool.val1, table, topt);
                        std::ofstream ranked(audit_dir + "/ranked_list.csv");
                        write_ranked_list_csv(ranked, art.ranked);
                        std::ofstream hist(audit_dir + "/histogram.csv");
                        write_histogram_csv(hist, art.histogram);
                    }
                }
            }
            const RunReport report = run_protocol(spec, ds, run_opt);
            write_or_print(report.to_json(!run_no_timing).dump(2) + "\n", run_out);
        } else if (*grid_cmd) {
            const Dataset ds = grid_ds.load(std::cerr);
            const auto reports = run_grid(ds, grid_opt);
            write_or_print(grid_to_json(reports, ds, grid_opt, grid_timing_inline), grid_out);
            if (!grid_timing_out.empty()) write_or_print(timing_json(reports), grid_timing_out);
            for (const auto& r : reports)
                if (!r.error.empty()) std::cerr << r.protocol << " failed: " << r.error << '\n';
        } else if (*sweep_cmd) {
            const Dataset ds = sweep_ds.load(std::cerr);
            const auto sweep = pool_size_sweep(ds, sweep_sizes, sweep_opt);
            write_or_print(sweep_to_json(sweep, ds), sweep_out);
            if (!sweep_reports_dir.empty()) {
                std::filesystem::create_directories(sweep_reports_dir);
                for (std::size_t s = 0; s < sweep.sizes.size(); ++s) {
                    RunOptions local = sweep_opt;
                    local.pool_size = sweep.sizes[s];
                    write_or_print(grid_to_json(sweep.reports[s], ds, local),
                                   sweep_reports_dir + "/grid_pool" +
                                       std::to_string(sweep.sizes[s]) + ".json");
                }
            }
        } else if (*base_cmd) {
            const Dataset ds = base_ds.load(std::cerr);
            const RunReport report = run_baseline(base_method, base_budget, ds, base_opt);
            write_or_print(report.to_json(true).dump(2) + "\n", base_out);
        } else if (*stats_cmd) {
            if (wilcoxon_files.size() != 2)
                throw std::runtime_error("stats needs --wilcoxon <reportA> <reportB>");
            PairedSample sample;
            for (int side = 0; side < 2; ++side) {
                std::ifstream in(wilcoxon_files[side]);
                if (!in) throw std::runtime_error("cannot open " + wilcoxon_files[side]);
                const auto j = nlohmann::json::parse(in);
                auto& dest = side == 0 ? sample.a : sample.b;
                for (const auto& fr : j.at("fold_results"))
                    dest.push_back(fr.at("test_accuracy").get<double>());
            }
            const double p = wilcoxon_signed_rank(sample);
            nlohmann::json j{{"test", "wilcoxon-signed-rank"},
                             {"n", sample.a.size()},
                             {"p_value", p}};
            std::cout << j.dump(2) << '\n';
        } else if (*report_cmd) {
            if (table6) {
                const auto ref = load_reference_table(ref_path);
                std::map<std::string, std::string> canonical;  // lowercase -> reference name
                for (const auto& ds : ref.datasets) canonical[normalize_name(ds)] = ds;
                std::map<std::string, std::map<std::string, double>> extra;
                for (const auto& spec : table6_add) {
                    const auto eq = spec.find('=');
                    if (eq == std::string::npos)
                        throw std::runtime_error("--add expects NAME=report.json");
                    const std::string name = spec.substr(0, eq);
                    std::ifstream in(spec.substr(eq + 1));
                    if (!in) throw std::runtime_error("cannot open " + spec.substr(eq + 1));
                    const auto j = nlohmann::json::parse(in);
                    const auto it = canonical.find(
                        normalize_name(j.at("dataset").get<std::string>()));
                    if (it == canonical.end())
                        throw std::runtime_error("dataset '" +
                                                 j.at("dataset").get<std::string>() +
                                                 "' is not in the reference table");
                    extra[name][it->second] =
                        100.0 * j.at("aggregate").at("accuracy_median").get<double>();
                }
                write_or_print(render_comparison_table(ref, extra, tie_epsilon), report_out);
            } else if (!csv_in.empty()) {
                std::ifstream in(csv_in);
                if (!in) throw std::runtime_error("cannot open " + csv_in);
                std::stringstream buffer;
                buffer << in.rdbuf();
                write_or_print(report_json_to_csv(buffer.str()), report_out);
            } else {
                throw std::runtime_error("report needs --table6 or --csv <file>");
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
