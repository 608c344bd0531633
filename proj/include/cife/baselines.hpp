#pragma once

#include <span>
#include <vector>

#include "cife/ensemble.hpp"
#include "cife/mask.hpp"
#include "cife/prediction.hpp"

namespace cife {

// L x L label agreement counts for one classifier pair: counts(i, j) is the
// number of instances predicted i by the first classifier and j by the second.
struct MultiClassContingency {
    std::size_t class_count = 0;
    std::vector<std::size_t> counts;
    std::size_t m = 0;

    std::size_t at(std::size_t i, std::size_t j) const { return counts[i * class_count + j]; }
    std::size_t& at(std::size_t i, std::size_t j) { return counts[i * class_count + j]; }
};

MultiClassContingency contingency_table(std::span<const int> row_i, std::span<const int> row_j,
                                        int class_count);

// Inter-rater agreement:  kappa = (theta1 - theta2) / (1 - theta2), where
// theta1 is observed agreement and theta2 chance agreement.
double kappa(const MultiClassContingency& ct);

// Walks classifier pairs in ascending kappa order, activating both members,
// until at least `budget` classifiers are selected.
EnsembleMask kappa_prune(const LabelMatrix& lm, std::size_t budget, unsigned workers = 1);

// Majority vote of the entire pool.
EnsembleResult bagging_full(const LabelMatrix& test_lm);

}  // namespace cife
