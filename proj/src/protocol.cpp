#include "cife/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace cife {

std::string ProtocolSpec::name() const {
    std::string out;
    out += classifiers == PoolMode::P ? 'P' : 'M';
    out += init == InitMode::A ? 'A' : 'T';
    out += fitness == FitnessKind::E ? 'E' : fitness == FitnessKind::D ? 'D' : 'P';
    out += '-';
    out += algorithm == Algorithm::GA ? "GA" : "UMDA";
    return out;
}

ProtocolSpec parse_protocol(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    const auto fail = [&]() -> ProtocolSpec {
        throw std::invalid_argument("invalid protocol '" + name +
                                    "'; expected [MP][AT][EDP]-(GA|UMDA), e.g. MTD-UMDA");
    };
    if (upper.size() < 6 || upper[3] != '-') return fail();

    ProtocolSpec spec;
    switch (upper[0]) {
        case 'P': spec.classifiers = PoolMode::P; break;
        case 'M': spec.classifiers = PoolMode::M; break;
        default: return fail();
    }
    switch (upper[1]) {
        case 'A': spec.init = InitMode::A; break;
        case 'T': spec.init = InitMode::T; break;
        default: return fail();
    }
    switch (upper[2]) {
        case 'E': spec.fitness = FitnessKind::E; break;
        case 'D': spec.fitness = FitnessKind::D; break;
        case 'P': spec.fitness = FitnessKind::P; break;
        default: return fail();
    }
    const std::string algo = upper.substr(4);
    if (algo == "GA")
        spec.algorithm = Algorithm::GA;
    else if (algo == "UMDA")
        spec.algorithm = Algorithm::UMDA;
    else
        return fail();
    return spec;
}

std::vector<ProtocolSpec> all_protocols() {
    std::vector<ProtocolSpec> specs;
    specs.reserve(24);
    for (PoolMode c : {PoolMode::P, PoolMode::M})
        for (InitMode i : {InitMode::A, InitMode::T})
            for (FitnessKind f : {FitnessKind::E, FitnessKind::D, FitnessKind::P})
                for (Algorithm e : {Algorithm::GA, Algorithm::UMDA})
                    specs.push_back({c, i, f, e});
    return specs;
}

}  // namespace cife
