#include "cife/population.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cife/rng.hpp"

namespace cife {

std::vector<EnsembleMask> random_population(std::size_t pop_size, std::size_t pool_size,
                                            std::uint64_t seed) {
    if (pop_size == 0 || pool_size == 0)
        throw std::invalid_argument("random_population: sizes must be positive");
    std::vector<EnsembleMask> population(pop_size, EnsembleMask(pool_size));
    std::vector<std::size_t> idx(pool_size);
    for (std::size_t ind = 0; ind < pop_size; ++ind) {
        Rng rng(derive_seed(seed, "individual", {ind}));
        const std::size_t k = rng.range(1, pool_size);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t j = 0; j < k; ++j) {
            std::swap(idx[j], idx[j + rng.below(pool_size - j)]);
            population[ind].set(idx[j]);
        }
    }
    return population;
}

double aggregate_pair_score(const std::array<double, 5>& oriented) {
    double product = 1.0;
    for (double s : oriented) product *= 1.0 + s;
    return product;
}

RankedPairList rank_pairs(const std::vector<double>& score_dc,
                          const std::vector<double>& pair_error, double alpha,
                          std::size_t pool_size) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("rank_pairs: alpha must lie in (0,1)");
    if (score_dc.size() != pair_error.size())
        throw std::invalid_argument("rank_pairs: score/error length mismatch");
    const std::size_t expected = pool_size * (pool_size - 1) / 2;
    if (score_dc.size() != expected)
        throw std::invalid_argument("rank_pairs: entry count does not match pool size");

    RankedPairList out;
    out.entries.reserve(expected);
    std::size_t p = 0;
    for (std::size_t i = 0; i < pool_size; ++i) {
        for (std::size_t j = i + 1; j < pool_size; ++j, ++p) {
            out.entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                   alpha * pair_error[p] + (1.0 - alpha) * score_dc[p]});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const RankedPair& a, const RankedPair& b) {
        if (a.score != b.score) return a.score < b.score;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    return out;
}

ClassifierHistogram build_histogram(const RankedPairList& ranked, std::size_t pool_size) {
    if (pool_size < 2) throw std::invalid_argument("build_histogram: pool must have >= 2 members");
    ClassifierHistogram hist;
    hist.frequency.assign(pool_size, 0);
    std::size_t covered = 0;
    for (const auto& entry : ranked.entries) {
        if (hist.frequency[entry.i]++ == 0) ++covered;
        if (hist.frequency[entry.j]++ == 0) ++covered;
        ++hist.cut_row;
        if (covered == pool_size) return hist;
    }
    throw std::invalid_argument("build_histogram: ranked list does not cover the pool");
}

std::size_t roulette_pick(const ClassifierHistogram& hist, Rng& rng) {
    std::size_t total = 0;
    for (std::size_t f : hist.frequency) total += f;
    if (total == 0) throw std::invalid_argument("roulette_pick: empty histogram");
    std::size_t spin = rng.below(total);
    for (std::size_t i = 0; i < hist.frequency.size(); ++i) {
        if (spin < hist.frequency[i]) return i;
        spin -= hist.frequency[i];
    }
    return hist.frequency.size() - 1;  // unreachable
}

std::vector<EnsembleMask> roulette_population(const ClassifierHistogram& hist,
                                              std::size_t pop_size, std::size_t pool_size,
                                              std::uint64_t seed) {
    if (hist.frequency.size() != pool_size)
        throw std::invalid_argument("roulette_population: histogram size mismatch");
    for (std::size_t f : hist.frequency)
        if (f == 0) throw std::invalid_argument("roulette_population: zero-frequency classifier");

    std::vector<EnsembleMask> population(pop_size, EnsembleMask(pool_size));
    for (std::size_t ind = 0; ind < pop_size; ++ind) {
        Rng rng(derive_seed(seed, "roulette", {ind}));
        const std::size_t k = rng.range(1, pool_size);
        EnsembleMask& mask = population[ind];
        std::size_t chosen = 0;
        while (chosen < k) {
            const std::size_t pick = roulette_pick(hist, rng);
            if (!mask.test(pick)) {
                mask.set(pick);
                ++chosen;
            }
        }
    }
    return population;
}

TuningArtifacts tuning_artifacts(const LabelMatrix& val1, const PairDiversityTable& table,
                                 const TuningOptions& options) {
    const std::size_t n = table.pool_size;
    if (val1.n_classifiers() != n)
        throw std::invalid_argument("tuning_artifacts: label matrix / pair table mismatch");

    TuningArtifacts art;
    art.score_dc.resize(table.entries.size());
    for (std::size_t p = 0; p < table.entries.size(); ++p)
        art.score_dc[p] = aggregate_pair_score(table.entries[p].oriented);

    if (options.rescale_combined && !art.score_dc.empty()) {
        const auto [lo_it, hi_it] = std::minmax_element(art.score_dc.begin(), art.score_dc.end());
        const double lo = *lo_it, hi = *hi_it;
        for (double& s : art.score_dc) s = hi > lo ? (s - lo) / (hi - lo) : 0.0;
    }

    std::vector<double> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = accuracy(val1.rows[i], val1.truth);
    art.pair_error.resize(table.entries.size());
    for (std::size_t p = 0; p < table.entries.size(); ++p) {
        const auto& e = table.entries[p];
        art.pair_error[p] = 1.0 - (acc[e.i] + acc[e.j]) / 2.0;
    }

    art.ranked = rank_pairs(art.score_dc, art.pair_error, options.alpha, n);
    art.histogram = build_histogram(art.ranked, n);
    return art;
}

std::vector<EnsembleMask> tuning_population(const LabelMatrix& val1,
                                            const PairDiversityTable& table, std::size_t pop_size,
                                            std::uint64_t seed, const TuningOptions& options) {
    const TuningArtifacts art = tuning_artifacts(val1, table, options);
    return roulette_population(art.histogram, pop_size, table.pool_size, seed);
}

void write_ranked_list_csv(std::ostream& out, const RankedPairList& ranked) {
    out << "row,i,j,score_rank\n";
    std::size_t row = 1;
    for (const auto& e : ranked.entries)
        out << row++ << ',' << e.i << ',' << e.j << ',' << e.score << '\n';
}

void write_histogram_csv(std::ostream& out, const ClassifierHistogram& hist) {
    out << "classifier,frequency\n";
    for (std::size_t i = 0; i < hist.frequency.size(); ++i)
        out << i << ',' << hist.frequency[i] << '\n';
    out << "cut_row," << hist.cut_row << '\n';
}

}  // namespace cife
