#pragma once

#include <cstddef>
#include <vector>

namespace cife {

// Per-dataset accuracies of two methods, position-paired.
struct PairedSample {
    std::vector<double> a;
    std::vector<double> b;
};

// Two-sided Wilcoxon signed-rank p-value. Zero differences are dropped; tied
// absolute differences receive average ranks. Exact null distribution while
// n <= exact_limit, normal approximation with tie and continuity corrections
// above (pass exact_limit = 0 to force the approximation).
double wilcoxon_signed_rank(const PairedSample& sample, std::size_t exact_limit = 25);

struct WinTieLoss {
    std::size_t win = 0;
    std::size_t tie = 0;
    std::size_t loss = 0;
};

// accuracies[method][dataset]; per dataset the single best method wins, any
// method within tie_epsilon of the maximum shares a tie instead.
std::vector<WinTieLoss> win_tie_loss(const std::vector<std::vector<double>>& accuracies,
                                     double tie_epsilon = 0.05);

}  // namespace cife
