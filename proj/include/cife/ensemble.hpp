#pragma once

#include <span>
#include <vector>

#include "cife/mask.hpp"
#include "cife/prediction.hpp"

namespace cife {

// Most frequent label; ties resolved toward the lowest class index.
int majority_vote(std::span<const int> votes);

struct EnsembleResult {
    EnsembleMask mask;
    double test_accuracy = 0.0;
    std::size_t ensemble_size = 0;
};

// Majority-vote accuracy of the active subset against the matrix's truth.
double ensemble_accuracy(const EnsembleMask& mask, const LabelMatrix& lm);

EnsembleResult evaluate(const EnsembleMask& mask, const LabelMatrix& test_lm);

}  // namespace cife
