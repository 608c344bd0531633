#include "cife/fitness.hpp"

#include <stdexcept>

#include "cife/ensemble.hpp"

namespace cife {

void FitnessSpec::validate() const {
    if (kind != FitnessKind::P) return;
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0 || gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("fitness weights must lie in [0,1]");
    if (std::abs(alpha + beta + gamma - 1.0) > 1e-12)
        throw std::invalid_argument("fitness weights must sum to 1");
}

FitnessValue f_e(const EnsembleMask& mask, const LabelMatrix& lm) {
    FitnessValue fv;
    fv.e_m = 1.0 - ensemble_accuracy(mask, lm);
    fv.value = fv.e_m;
    return fv;
}

FitnessValue f_d(const EnsembleMask& mask, const LabelMatrix& lm, const PairDiversityTable& table,
                 DiversityNorm norm) {
    FitnessValue fv;
    fv.e_m = 1.0 - ensemble_accuracy(mask, lm);
    fv.d_m = ensemble_diversity(mask, table, norm);
    fv.value = (fv.e_m + fv.d_m) / 2.0;
    return fv;
}

FitnessValue f_p(const EnsembleMask& mask, const LabelMatrix& lm, const PairDiversityTable& table,
                 const FitnessSpec& spec) {
    spec.validate();
    FitnessValue fv;
    fv.e_m = 1.0 - ensemble_accuracy(mask, lm);
    fv.d_m = ensemble_diversity(mask, table, spec.diversity_norm);
    fv.t_p = static_cast<double>(mask.count()) / static_cast<double>(mask.size());
    fv.value = spec.alpha * fv.e_m + spec.beta * fv.d_m + spec.gamma * fv.t_p;
    return fv;
}

FitnessFn make_fitness(const FitnessSpec& spec, const LabelMatrix& eval_lm,
                       const PairDiversityTable* table) {
    spec.validate();
    if (spec.kind != FitnessKind::E && table == nullptr)
        throw std::invalid_argument("diversity-aware fitness needs a pair table");
    switch (spec.kind) {
        case FitnessKind::E:
            return [&eval_lm](const EnsembleMask& m) { return f_e(m, eval_lm); };
        case FitnessKind::D: {
            const DiversityNorm norm = spec.diversity_norm;
            return [&eval_lm, table, norm](const EnsembleMask& m) {
                return f_d(m, eval_lm, *table, norm);
            };
        }
        case FitnessKind::P:
            return [&eval_lm, table, spec](const EnsembleMask& m) {
                return f_p(m, eval_lm, *table, spec);
            };
    }
    throw std::logic_error("unknown fitness kind");
}

}  // namespace cife
