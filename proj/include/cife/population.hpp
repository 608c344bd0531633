#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cife/diversity.hpp"
#include "cife/mask.hpp"

namespace cife {

// Mode A: uniform cardinality in [1, pool_size], then that many distinct
// classifiers chosen uniformly.
std::vector<EnsembleMask> random_population(std::size_t pop_size, std::size_t pool_size,
                                            std::uint64_t seed);

// score_dc = product of (1 + oriented score) over the five measures; [1, 32].
double aggregate_pair_score(const std::array<double, 5>& oriented);

struct RankedPair {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double score = 0.0;
};

// Ascending by score, ties by (i, j); lower score = more suitable pair.
struct RankedPairList {
    std::vector<RankedPair> entries;
};

// score_dc and pair_error are indexed like PairDiversityTable entries.
RankedPairList rank_pairs(const std::vector<double>& score_dc,
                          const std::vector<double>& pair_error, double alpha,
                          std::size_t pool_size);

struct ClassifierHistogram {
    std::vector<std::size_t> frequency;
    std::size_t cut_row = 0;  // rows consumed until every classifier appeared
};

ClassifierHistogram build_histogram(const RankedPairList& ranked, std::size_t pool_size);

// One frequency-proportional spin; selection probability of classifier i is
// frequency[i] / sum(frequency).
std::size_t roulette_pick(const ClassifierHistogram& hist, class Rng& rng);

// Mode T step (iv)-(v): frequency-proportional roulette, duplicates re-spun
// until the drawn cardinality of distinct classifiers is reached.
std::vector<EnsembleMask> roulette_population(const ClassifierHistogram& hist,
                                              std::size_t pop_size, std::size_t pool_size,
                                              std::uint64_t seed);

struct TuningOptions {
    double alpha = 0.5;            // error weight in the rank mix
    bool rescale_combined = true;  // min-max score_dc onto [0,1] before mixing
};

struct TuningArtifacts {
    std::vector<double> score_dc;    // after optional rescaling
    std::vector<double> pair_error;  // 1 - mean accuracy of the pair on val1
    RankedPairList ranked;
    ClassifierHistogram histogram;
};

TuningArtifacts tuning_artifacts(const LabelMatrix& val1, const PairDiversityTable& table,
                                 const TuningOptions& options = {});

std::vector<EnsembleMask> tuning_population(const LabelMatrix& val1,
                                            const PairDiversityTable& table, std::size_t pop_size,
                                            std::uint64_t seed, const TuningOptions& options = {});

void write_ranked_list_csv(std::ostream& out, const RankedPairList& ranked);
void write_histogram_csv(std::ostream& out, const ClassifierHistogram& hist);

}  // namespace cife
