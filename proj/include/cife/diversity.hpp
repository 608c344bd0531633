#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cife/mask.hpp"
#include "cife/prediction.hpp"

namespace cife {

// The five pairwise diversity measures. Raw ranges: COR, IA, QSTAT in [-1,1];
// DFM, DM in [0,1].
enum class MeasureKind { COR, DFM, DM, IA, QSTAT };

inline constexpr std::array<MeasureKind, 5> kAllMeasures = {
    MeasureKind::COR, MeasureKind::DFM, MeasureKind::DM, MeasureKind::IA, MeasureKind::QSTAT};

const char* measure_name(MeasureKind kind);

double measure(MeasureKind kind, const ContingencyFractions& ct);

// Maps a raw score onto [0,1] so that LOWER always means MORE diverse:
// signed measures via (x+1)/2, DFM unchanged, DM inverted as 1-x.
double orient_normalize(MeasureKind kind, double raw);

// d_c: arithmetic mean of the five oriented scores.
double pair_combined(const std::array<double, 5>& oriented);

struct PairEntry {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    ContingencyFractions ct;
    std::array<double, 5> raw{};
    std::array<double, 5> oriented{};
    double d_c = 0.0;
};

// All |C|(|C|-1)/2 pairs in (i, j) lexicographic order.
struct PairDiversityTable {
    std::size_t pool_size = 0;
    std::size_t n_instances = 0;
    std::vector<PairEntry> entries;

    std::size_t pair_index(std::size_t i, std::size_t j) const {
        // i < j required
        return i * (2 * pool_size - i - 1) / 2 + (j - i - 1);
    }
    double d_c_at(std::size_t i, std::size_t j) const { return entries[pair_index(i, j)].d_c; }
};

PairDiversityTable build_pair_table(const LabelMatrix& lm, unsigned workers = 1);

// Eq-as-printed divides the pair sum by |C*|, which can exceed 1; the default
// divides by the number of active pairs so d_m stays in [0,1].
enum class DiversityNorm { PairCount, ActiveCountCompat };

double ensemble_diversity(const EnsembleMask& mask, const PairDiversityTable& table,
                          DiversityNorm norm = DiversityNorm::PairCount);

void write_pair_table_csv(std::ostream& out, const PairDiversityTable& table);

}  // namespace cife
