#pragma once

#include <cmath>
#include <functional>

#include "cife/diversity.hpp"
#include "cife/mask.hpp"
#include "cife/prediction.hpp"

namespace cife {

// The three minimized objectives: E = error only, D = (error + diversity)/2,
// P = weighted error + diversity + ensemble-size penalty.
enum class FitnessKind { E, D, P };

enum class EvalSplit { Val1, Val2 };

struct FitnessSpec {
    FitnessKind kind = FitnessKind::E;
    double alpha = 0.45;
    double beta = 0.45;
    double gamma = 0.10;
    EvalSplit eval_split = EvalSplit::Val2;
    DiversityNorm diversity_norm = DiversityNorm::PairCount;

    void validate() const;
};

struct FitnessValue {
    double value = 0.0;
    double e_m = std::numeric_limits<double>::quiet_NaN();
    double d_m = std::numeric_limits<double>::quiet_NaN();
    double t_p = std::numeric_limits<double>::quiet_NaN();
};

FitnessValue f_e(const EnsembleMask& mask, const LabelMatrix& lm);
FitnessValue f_d(const EnsembleMask& mask, const LabelMatrix& lm, const PairDiversityTable& table,
                 DiversityNorm norm = DiversityNorm::PairCount);
FitnessValue f_p(const EnsembleMask& mask, const LabelMatrix& lm, const PairDiversityTable& table,
                 const FitnessSpec& spec);

using FitnessFn = std::function<FitnessValue(const EnsembleMask&)>;

// Binds a spec to the evaluation label matrix and (for D/P) the pair table.
FitnessFn make_fitness(const FitnessSpec& spec, const LabelMatrix& eval_lm,
                       const PairDiversityTable* table);

}  // namespace cife
