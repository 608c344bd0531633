#include "cife/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cife {

namespace {

// Average ranks doubled so tied groups stay integral; sum of all entries is
// n(n+1).
std::vector<std::uint64_t> double_ranks(const std::vector<double>& abs_diffs) {
    const std::size_t n = abs_diffs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_diffs[a] < abs_diffs[b]; });
    std::vector<std::uint64_t> ranks2(n);
    std::size_t pos = 0;
    while (pos < n) {
        std::size_t end = pos;
        while (end + 1 < n && abs_diffs[order[end + 1]] == abs_diffs[order[pos]]) ++end;
        // ranks pos+1 .. end+1 averaged; doubled average = (pos+1) + (end+1)
        const std::uint64_t r2 = static_cast<std::uint64_t>(pos + 1 + end + 1);
        for (std::size_t k = pos; k <= end; ++k) ranks2[order[k]] = r2;
        pos = end + 1;
    }
    return ranks2;
}

double exact_two_sided_p(const std::vector<std::uint64_t>& ranks2, std::uint64_t statistic2) {
    // Subset-sum counting: ways[s] = number of sign assignments whose
    // negative-rank sum (doubled) equals s.
    std::uint64_t total = 0;
    for (auto r : ranks2) total += r;
    std::vector<std::uint64_t> ways(total + 1, 0);
    ways[0] = 1;
    for (auto r : ranks2)
        for (std::uint64_t s = total; s >= r; --s) ways[s] += ways[s - r];
    std::uint64_t at_most = 0;
    for (std::uint64_t s = 0; s <= statistic2; ++s) at_most += ways[s];
    const double p = 2.0 * static_cast<double>(at_most) /
                     std::pow(2.0, static_cast<double>(ranks2.size()));
    return std::min(p, 1.0);
}

double normal_two_sided_p(const std::vector<std::uint64_t>& ranks2, std::uint64_t statistic2) {
    const double n = static_cast<double>(ranks2.size());
    const double t = static_cast<double>(statistic2) / 2.0;
    const double mu = n * (n + 1.0) / 4.0;
    double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    // tie correction: subtract sum(g^3 - g)/48 per tied group of size g
    std::vector<std::uint64_t> sorted = ranks2;
    std::sort(sorted.begin(), sorted.end());
    std::size_t pos = 0;
    while (pos < sorted.size()) {
        std::size_t end = pos;
        while (end + 1 < sorted.size() && sorted[end + 1] == sorted[pos]) ++end;
        const double g = static_cast<double>(end - pos + 1);
        variance -= (g * g * g - g) / 48.0;
        pos = end + 1;
    }
    if (variance <= 0.0) return 1.0;
    const double z = (t - mu + 0.5) / std::sqrt(variance);  // continuity toward the mean
    const double p = 2.0 * 0.5 * std::erfc(-z / std::sqrt(2.0));
    return std::min(p, 1.0);
}

}  // namespace

double wilcoxon_signed_rank(const PairedSample& sample, std::size_t exact_limit) {
    if (sample.a.size() != sample.b.size())
        throw std::invalid_argument("wilcoxon: sample length mismatch");
    if (sample.a.empty()) throw std::invalid_argument("wilcoxon: empty sample");

    std::vector<double> abs_diffs;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < sample.a.size(); ++i) {
        const double d = sample.a[i] - sample.b[i];
        if (d == 0.0) continue;  // zero differences carry no information
        abs_diffs.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    if (abs_diffs.empty()) return 1.0;

    const std::vector<std::uint64_t> ranks2 = double_ranks(abs_diffs);
    std::uint64_t w_plus2 = 0, total2 = 0;
    for (std::size_t i = 0; i < ranks2.size(); ++i) {
        total2 += ranks2[i];
        if (positive[i]) w_plus2 += ranks2[i];
    }
    const std::uint64_t statistic2 = std::min(w_plus2, total2 - w_plus2);

    if (ranks2.size() <= exact_limit) return exact_two_sided_p(ranks2, statistic2);
    return normal_two_sided_p(ranks2, statistic2);
}

std::vector<WinTieLoss> win_tie_loss(const std::vector<std::vector<double>>& accuracies,
                                     double tie_epsilon) {
    if (accuracies.empty()) return {};
    const std::size_t n_datasets = accuracies.front().size();
    for (const auto& method : accuracies)
        if (method.size() != n_datasets)
            throw std::invalid_argument("win_tie_loss: methods cover different dataset counts");

    std::vector<WinTieLoss> out(accuracies.size());
    for (std::size_t d = 0; d < n_datasets; ++d) {
        double best = accuracies[0][d];
        for (const auto& method : accuracies) best = std::max(best, method[d]);
        std::size_t contenders = 0;
        for (const auto& method : accuracies)
            if (method[d] >= best - tie_epsilon) ++contenders;
        for (std::size_t m = 0; m < accuracies.size(); ++m) {
            if (accuracies[m][d] < best - tie_epsilon)
                out[m].loss++;
            else if (contenders == 1)
                out[m].win++;
            else
                out[m].tie++;
        }
    }
    return out;
}

}  // namespace cife
