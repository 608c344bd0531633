#pragma once

#include <span>
#include <string>
#include <vector>

namespace cife {

// Predicted labels of every pool member on one split, plus the ground truth.
struct LabelMatrix {
    std::vector<std::vector<int>> rows;  // rows[classifier][instance]
    std::vector<int> truth;
    std::string split_tag;  // "val1" | "val2" | "test"

    std::size_t n_instances() const { return truth.size(); }
    std::size_t n_classifiers() const { return rows.size(); }
};

// Joint hit/miss fractions of a classifier pair against ground truth:
//   a = both correct, b = only c_j correct, c = only c_i correct, d = both wrong.
struct ContingencyFractions {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

double accuracy(std::span<const int> predicted, std::span<const int> truth);

ContingencyFractions contingency(std::span<const int> row_i, std::span<const int> row_j,
                                 std::span<const int> truth);

}  // namespace cife
