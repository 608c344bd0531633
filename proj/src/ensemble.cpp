#include "cife/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

namespace cife {

int majority_vote(std::span<const int> votes) {
    if (votes.empty()) throw std::invalid_argument("majority_vote: no votes");
    int max_label = 0;
    for (int v : votes) max_label = std::max(max_label, v);
    std::vector<int> counts(max_label + 1, 0);
    for (int v : votes) counts[v]++;
    int best = 0;
    for (int c = 1; c <= max_label; ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

double ensemble_accuracy(const EnsembleMask& mask, const LabelMatrix& lm) {
    const auto active = mask.active();
    if (active.empty()) throw std::invalid_argument("ensemble_accuracy: empty mask");
    const std::size_t m = lm.n_instances();
    int max_label = 0;
    for (int t : lm.truth) max_label = std::max(max_label, t);
    for (std::size_t r : active)
        for (int v : lm.rows[r]) max_label = std::max(max_label, v);
    std::vector<int> counts(max_label + 1);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < m; ++t) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t r : active) counts[lm.rows[r][t]]++;
        int best = 0;
        for (int c = 1; c <= max_label; ++c)
            if (counts[c] > counts[best]) best = c;
        if (best == lm.truth[t]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(m);
}

EnsembleResult evaluate(const EnsembleMask& mask, const LabelMatrix& test_lm) {
    EnsembleResult result;
    result.mask = mask;
    result.ensemble_size = mask.count();
    result.test_accuracy = ensemble_accuracy(mask, test_lm);
    return result;
}

}  // namespace cife
