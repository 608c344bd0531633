#include "cife/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "cife/parallel.hpp"

namespace cife {

MultiClassContingency contingency_table(std::span<const int> row_i, std::span<const int> row_j,
                                        int class_count) {
    if (row_i.size() != row_j.size())
        throw std::invalid_argument("contingency_table: row length mismatch");
    if (row_i.empty()) throw std::invalid_argument("contingency_table: empty rows");
    MultiClassContingency ct;
    ct.class_count = static_cast<std::size_t>(class_count);
    ct.counts.assign(ct.class_count * ct.class_count, 0);
    ct.m = row_i.size();
    for (std::size_t t = 0; t < row_i.size(); ++t) ct.at(row_i[t], row_j[t])++;
    return ct;
}

double kappa(const MultiClassContingency& ct) {
    if (ct.m == 0) throw std::invalid_argument("kappa: empty contingency table");
    const double m = static_cast<double>(ct.m);
    double theta1 = 0.0;
    for (std::size_t i = 0; i < ct.class_count; ++i)
        theta1 += static_cast<double>(ct.at(i, i));
    theta1 /= m;
    double theta2 = 0.0;
    for (std::size_t i = 0; i < ct.class_count; ++i) {
        double row_sum = 0.0, col_sum = 0.0;
        for (std::size_t j = 0; j < ct.class_count; ++j) {
            row_sum += static_cast<double>(ct.at(i, j));
            col_sum += static_cast<double>(ct.at(j, i));
        }
        theta2 += (row_sum / m) * (col_sum / m);
    }
    if (theta2 == 1.0) return theta1 == 1.0 ? 1.0 : 0.0;  // degenerate constant labels
    return (theta1 - theta2) / (1.0 - theta2);
}

EnsembleMask kappa_prune(const LabelMatrix& lm, std::size_t budget, unsigned workers) {
    const std::size_t n = lm.n_classifiers();
    if (budget < 2 || budget > n)
        throw std::invalid_argument("kappa_prune: budget must lie in [2, pool size]");
    const int class_count = [&] {
        int max_label = 0;
        for (const auto& row : lm.rows)
            for (int v : row) max_label = std::max(max_label, v);
        for (int v : lm.truth) max_label = std::max(max_label, v);
        return max_label + 1;
    }();

    struct Pair {
        double kappa_value;
        std::uint32_t i, j;
    };
    std::vector<Pair> pairs(n * (n - 1) / 2);
    parallel_for(pairs.size(), workers, [&](std::size_t p) {
        std::size_t i = 0, offset = p;
        while (offset >= n - i - 1) {
            offset -= n - i - 1;
            ++i;
        }
        const std::size_t j = i + 1 + offset;
        pairs[p] = {kappa(contingency_table(lm.rows[i], lm.rows[j], class_count)),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    });
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.kappa_value != b.kappa_value) return a.kappa_value < b.kappa_value;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    EnsembleMask mask(n);
    std::size_t active = 0;
    for (const auto& pair : pairs) {
        if (!mask.test(pair.i)) {
            mask.set(pair.i);
            ++active;
        }
        if (!mask.test(pair.j)) {
            mask.set(pair.j);
            ++active;
        }
        if (active >= budget) break;
    }
    return mask;
}

EnsembleResult bagging_full(const LabelMatrix& test_lm) {
    if (test_lm.n_classifiers() == 0) throw std::invalid_argument("bagging_full: empty pool");
    EnsembleMask all(test_lm.n_classifiers());
    for (std::size_t i = 0; i < all.size(); ++i) all.set(i);
    return evaluate(all, test_lm);
}

}  // namespace cife
