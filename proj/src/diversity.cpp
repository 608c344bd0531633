#include "cife/diversity.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cife/parallel.hpp"

namespace cife {

const char* measure_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::COR: return "COR";
        case MeasureKind::DFM: return "DFM";
        case MeasureKind::DM: return "DM";
        case MeasureKind::IA: return "IA";
        case MeasureKind::QSTAT: return "QSTAT";
    }
    return "?";
}

double measure(MeasureKind kind, const ContingencyFractions& ct) {
    const double a = ct.a, b = ct.b, c = ct.c, d = ct.d;
    switch (kind) {
        case MeasureKind::COR: {
            const double denom_sq = (a + b) * (c + d) * (a + c) * (b + d);
            if (denom_sq <= 0.0) return 0.0;
            return (a * d - b * c) / std::sqrt(denom_sq);
        }
        case MeasureKind::DFM:
            return d;
        case MeasureKind::DM:
            return (b + c) / (a + b + c + d);
        case MeasureKind::IA: {
            const double denom = (a + b) * (c + d) + (a + c) * (b + d);
            if (denom == 0.0) return 0.0;
            return 2.0 * (a * c - b * d) / denom;
        }
        case MeasureKind::QSTAT: {
            const double denom = a * d + b * c;
            if (denom == 0.0) return 0.0;
            return (a * d - b * c) / denom;
        }
    }
    throw std::logic_error("unknown measure");
}

double orient_normalize(MeasureKind kind, double raw) {
    const bool signed_measure =
        kind == MeasureKind::COR || kind == MeasureKind::IA || kind == MeasureKind::QSTAT;
    // COR and QSTAT are genuinely bounded by [-1,1]; the interrater formula
    // reaches (-2,2) on unbalanced pairs (e.g. a=c=0.5 gives exactly 2), so
    // its mapped score saturates at the ends of the unit interval.
    const double lo = kind == MeasureKind::IA ? -2.0 : signed_measure ? -1.0 : 0.0;
    const double hi = kind == MeasureKind::IA ? 2.0 : 1.0;
    if (raw < lo - 1e-9 || raw > hi + 1e-9)
        throw std::invalid_argument(std::string("raw ") + measure_name(kind) +
                                    " score outside its range");
    double score;
    if (signed_measure)
        score = (raw + 1.0) / 2.0;
    else if (kind == MeasureKind::DM)
        score = 1.0 - raw;  // DM grows with diversity; all scores must shrink with it
    else
        score = raw;
    if (score < 0.0) score = 0.0;
    if (score > 1.0) score = 1.0;
    return score;
}

double pair_combined(const std::array<double, 5>& oriented) {
    double sum = 0.0;
    for (double s : oriented) sum += s;
    return sum / 5.0;
}

PairDiversityTable build_pair_table(const LabelMatrix& lm, unsigned workers) {
    const std::size_t n = lm.n_classifiers();
    PairDiversityTable table;
    table.pool_size = n;
    table.n_instances = lm.n_instances();
    if (n < 2) return table;
    table.entries.resize(n * (n - 1) / 2);
    parallel_for(table.entries.size(), workers, [&](std::size_t p) {
        // invert the triangular pair index
        std::size_t i = 0;
        std::size_t offset = p;
        while (offset >= n - i - 1) {
            offset -= n - i - 1;
            ++i;
        }
        const std::size_t j = i + 1 + offset;
        PairEntry& entry = table.entries[p];
        entry.i = static_cast<std::uint32_t>(i);
        entry.j = static_cast<std::uint32_t>(j);
        entry.ct = contingency(lm.rows[i], lm.rows[j], lm.truth);
        for (std::size_t k = 0; k < kAllMeasures.size(); ++k) {
            entry.raw[k] = measure(kAllMeasures[k], entry.ct);
            entry.oriented[k] = orient_normalize(kAllMeasures[k], entry.raw[k]);
        }
        entry.d_c = pair_combined(entry.oriented);
    });
    return table;
}

double ensemble_diversity(const EnsembleMask& mask, const PairDiversityTable& table,
                          DiversityNorm norm) {
    const auto active = mask.active();
    if (active.size() < 2) return 1.0;  // singletons are maximally non-diverse
    double sum = 0.0;
    for (std::size_t x = 0; x < active.size(); ++x)
        for (std::size_t y = x + 1; y < active.size(); ++y)
            sum += table.d_c_at(active[x], active[y]);
    const double denom = norm == DiversityNorm::PairCount
                             ? static_cast<double>(active.size() * (active.size() - 1) / 2)
                             : static_cast<double>(active.size());
    return sum / denom;
}

void write_pair_table_csv(std::ostream& out, const PairDiversityTable& table) {
    out << "i,j,a,b,c,d";
    for (auto kind : kAllMeasures) out << ',' << measure_name(kind) << "_raw";
    for (auto kind : kAllMeasures) out << ',' << measure_name(kind) << "_oriented";
    out << ",d_c\n";
    for (const auto& e : table.entries) {
        out << e.i << ',' << e.j << ',' << e.ct.a << ',' << e.ct.b << ',' << e.ct.c << ','
            << e.ct.d;
        for (double v : e.raw) out << ',' << v;
        for (double v : e.oriented) out << ',' << v;
        out << ',' << e.d_c << '\n';
    }
}

}  // namespace cife
