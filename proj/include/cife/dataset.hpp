#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cife/matrix.hpp"

namespace cife {

struct Dataset {
    Matrix features;
    std::vector<int> labels;   // dense codes 0..class_count-1
    int class_count = 0;
    std::string name;
    std::vector<std::string> class_names;  // original tokens, first-appearance order

    std::size_t n_instances() const { return features.rows; }
    std::size_t n_attributes() const { return features.cols; }
};

// One cross-validation run: three of the k partitions train, one is
// validation-1 (pool ranking, label matrices, tuning), one validation-2
// (fitness), one test.
struct FoldSplit {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> val1_idx;
    std::vector<std::size_t> val2_idx;
    std::vector<std::size_t> test_idx;
};

struct BootstrapSample {
    std::vector<std::size_t> indices;  // drawn with replacement from train_idx
    std::uint64_t rng_seed = 0;
};

// Position of the label column in a CSV; default is the last column.
struct LabelColumn {
    std::optional<std::size_t> index;  // nullopt = last column

    static LabelColumn last() { return {}; }
    static LabelColumn at(std::size_t i) { return {i}; }
};

Dataset load_csv(const std::string& path, LabelColumn label_column = LabelColumn::last(),
                 std::vector<std::string>* warnings = nullptr);

std::vector<FoldSplit> make_folds(const Dataset& ds, std::size_t k, std::uint64_t seed,
                                  std::vector<std::string>* warnings = nullptr);

BootstrapSample bootstrap(const std::vector<std::size_t>& train_idx, std::uint64_t seed);

// Fold assignments as JSON text for reproducibility audits.
std::string folds_to_json(const std::vector<FoldSplit>& folds);

}  // namespace cife
