#pragma once

#include <string>
#include <vector>

#include "cife/evolve.hpp"
#include "cife/fitness.hpp"
#include "cife/learners.hpp"

namespace cife {

enum class InitMode { A, T };  // random | tuning

// One of the 24 protocol combinations, e.g. "MTD-UMDA": multiple techniques,
// tuning initialization, error+diversity fitness, UMDA.
struct ProtocolSpec {
    PoolMode classifiers = PoolMode::P;
    InitMode init = InitMode::A;
    FitnessKind fitness = FitnessKind::E;
    Algorithm algorithm = Algorithm::GA;

    std::string name() const;
    bool operator==(const ProtocolSpec&) const = default;
};

// Case-insensitive parse of "[MP][AT][EDP]-(GA|UMDA)".
ProtocolSpec parse_protocol(const std::string& name);

// All 24 combinations in a fixed order.
std::vector<ProtocolSpec> all_protocols();

}  // namespace cife
