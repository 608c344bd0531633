#include "cife/prediction.hpp"

#include <stdexcept>

namespace cife {

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accuracy: prediction/truth length mismatch");
    if (truth.empty()) throw std::invalid_argument("accuracy: empty vectors");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predicted[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

ContingencyFractions contingency(std::span<const int> row_i, std::span<const int> row_j,
                                 std::span<const int> truth) {
    if (row_i.size() != truth.size() || row_j.size() != truth.size())
        throw std::invalid_argument("contingency: row/truth length mismatch");
    if (truth.empty()) throw std::invalid_argument("contingency: empty vectors");
    std::size_t na = 0, nb = 0, nc = 0, nd = 0;
    for (std::size_t t = 0; t < truth.size(); ++t) {
        const bool hit_i = row_i[t] == truth[t];
        const bool hit_j = row_j[t] == truth[t];
        if (hit_i && hit_j)
            ++na;
        else if (hit_j)
            ++nb;
        else if (hit_i)
            ++nc;
        else
            ++nd;
    }
    const double m = static_cast<double>(truth.size());
    return {static_cast<double>(na) / m, static_cast<double>(nb) / m,
            static_cast<double>(nc) / m, static_cast<double>(nd) / m};
}

}  // namespace cife
