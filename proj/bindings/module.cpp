// Python bindings for the main operations: dataset handling, diversity
// measures, kappa, the Wilcoxon test, and full protocol runs (returned as
// report JSON strings).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cife/baselines.hpp"
#include "cife/ensemble.hpp"
#include "cife/harness.hpp"
#include "cife/population.hpp"
#include "cife/stats.hpp"

namespace py = pybind11;
using namespace cife;

namespace {

RunOptions options_from_kwargs(std::size_t pool_size, std::size_t folds, std::uint64_t seed,
                               std::size_t candidates, double scale, unsigned workers,
                               std::size_t population, std::size_t generations) {
    RunOptions opt;
    opt.pool_size = pool_size;
    opt.folds = folds;
    opt.seed = seed;
    opt.candidates = candidates;
    opt.scale = scale;
    opt.workers = workers;
    opt.population_size = population;
    opt.max_generations = generations;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "classifier ensemble selection and fusion";

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_instances", &Dataset::n_instances)
        .def_property_readonly("n_attributes", &Dataset::n_attributes)
        .def_readonly("class_count", &Dataset::class_count)
        .def_readonly("name", &Dataset::name)
        .def_readonly("labels", &Dataset::labels)
        .def("feature_row",
             [](const Dataset& ds, std::size_t i) {
                 const auto row = ds.features.row(i);
                 return std::vector<double>(row.begin(), row.end());
             })
        .def("__repr__", [](const Dataset& ds) {
            return "Dataset(" + ds.name + ", " + std::to_string(ds.n_instances()) + "x" +
                   std::to_string(ds.n_attributes()) + ", " + std::to_string(ds.class_count) +
                   " classes)";
        });

    m.def(
        "load_csv",
        [](const std::string& path, int label_col) {
            const LabelColumn col = label_col < 0
                                        ? LabelColumn::last()
                                        : LabelColumn::at(static_cast<std::size_t>(label_col));
            return load_csv(path, col);
        },
        py::arg("path"), py::arg("label_col") = -1,
        "Load a CSV dataset; labels re-encoded to 0..L-1 in appearance order.");

    m.def(
        "make_folds",
        [](const Dataset& ds, std::size_t k, std::uint64_t seed) {
            const auto folds = make_folds(ds, k, seed);
            py::list out;
            for (const auto& f : folds) {
                py::dict d;
                d["train"] = f.train_idx;
                d["val1"] = f.val1_idx;
                d["val2"] = f.val2_idx;
                d["test"] = f.test_idx;
                out.append(d);
            }
            return out;
        },
        py::arg("dataset"), py::arg("k") = 6, py::arg("seed") = 0,
        "Stratified rotation splits: train (3 groups), val1, val2, test.");

    m.def(
        "accuracy",
        [](const std::vector<int>& predicted, const std::vector<int>& truth) {
            return accuracy(predicted, truth);
        },
        py::arg("predicted"), py::arg("truth"));

    m.def(
        "majority_vote",
        [](const std::vector<int>& votes) { return majority_vote(votes); }, py::arg("votes"),
        "Most frequent label, ties toward the lowest class index.");

    m.def(
        "diversity_scores",
        [](const std::vector<int>& row_i, const std::vector<int>& row_j,
           const std::vector<int>& truth) {
            const auto ct = contingency(row_i, row_j, truth);
            py::dict out;
            out["a"] = ct.a;
            out["b"] = ct.b;
            out["c"] = ct.c;
            out["d"] = ct.d;
            std::array<double, 5> oriented{};
            for (std::size_t k = 0; k < kAllMeasures.size(); ++k) {
                const double raw = measure(kAllMeasures[k], ct);
                oriented[k] = orient_normalize(kAllMeasures[k], raw);
                out[measure_name(kAllMeasures[k])] = raw;
            }
            out["d_c"] = pair_combined(oriented);
            return out;
        },
        py::arg("row_i"), py::arg("row_j"), py::arg("truth"),
        "Contingency fractions, the five raw measures, and the combined score d_c.");

    m.def(
        "kappa",
        [](const std::vector<int>& row_i, const std::vector<int>& row_j, int class_count) {
            return kappa(contingency_table(row_i, row_j, class_count));
        },
        py::arg("row_i"), py::arg("row_j"), py::arg("class_count"),
        "Inter-rater agreement between two label vectors.");

    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return wilcoxon_signed_rank({a, b});
        },
        py::arg("a"), py::arg("b"), "Two-sided signed-rank p-value.");

    m.def(
        "win_tie_loss",
        [](const std::vector<std::vector<double>>& accuracies, double tie_epsilon) {
            const auto counts = win_tie_loss(accuracies, tie_epsilon);
            py::list out;
            for (const auto& c : counts) out.append(py::make_tuple(c.win, c.tie, c.loss));
            return out;
        },
        py::arg("accuracies"), py::arg("tie_epsilon") = 0.05);

    m.def("list_protocols", [] {
        std::vector<std::string> names;
        for (const auto& spec : all_protocols()) names.push_back(spec.name());
        return names;
    });

    m.def(
        "parse_protocol",
        [](const std::string& name) {
            const auto spec = parse_protocol(name);
            py::dict out;
            out["name"] = spec.name();
            out["classifiers"] = spec.classifiers == PoolMode::P ? "P" : "M";
            out["init"] = spec.init == InitMode::A ? "A" : "T";
            out["fitness"] = spec.fitness == FitnessKind::E   ? "E"
                             : spec.fitness == FitnessKind::D ? "D"
                                                              : "P";
            out["algorithm"] = spec.algorithm == Algorithm::GA ? "GA" : "UMDA";
            return out;
        },
        py::arg("name"));

    m.def(
        "run_protocol",
        [](const std::string& protocol, const Dataset& ds, std::size_t pool_size,
           std::size_t folds, std::uint64_t seed, std::size_t candidates, double scale,
           unsigned workers, std::size_t population, std::size_t generations) {
            const auto report =
                run_protocol(parse_protocol(protocol), ds,
                             options_from_kwargs(pool_size, folds, seed, candidates, scale,
                                                 workers, population, generations));
            return report.to_json(false).dump();
        },
        py::arg("protocol"), py::arg("dataset"), py::arg("pool_size") = 150,
        py::arg("folds") = 6, py::arg("seed") = 0, py::arg("candidates") = 3000,
        py::arg("scale") = 1.0, py::arg("workers") = 0, py::arg("population") = 500,
        py::arg("generations") = 250,
        "Run one protocol over k-fold cross-validation; returns the report as a JSON string.");

    m.def(
        "run_grid",
        [](const Dataset& ds, std::size_t pool_size, std::size_t folds, std::uint64_t seed,
           std::size_t candidates, double scale, unsigned workers, std::size_t population,
           std::size_t generations) {
            const auto opt = options_from_kwargs(pool_size, folds, seed, candidates, scale,
                                                 workers, population, generations);
            return grid_to_json(run_grid(ds, opt), ds, opt);
        },
        py::arg("dataset"), py::arg("pool_size") = 150, py::arg("folds") = 6, py::arg("seed") = 0,
        py::arg("candidates") = 3000, py::arg("scale") = 1.0, py::arg("workers") = 0,
        py::arg("population") = 500, py::arg("generations") = 250,
        "All 24 protocols with shared pools; returns the grid report JSON string.");

#ifdef CIFE_VERSION
    m.attr("__version__") = CIFE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
