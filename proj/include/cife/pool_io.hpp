#pragma once

#include <string>

#include "cife/learners.hpp"

namespace cife {

// Versioned JSON pool files: model parameters plus the cached label matrices,
// so selection experiments can rerun without retraining.
void save_pool(const ClassifierPool& pool, const std::string& path);
ClassifierPool load_pool(const std::string& path);

}  // namespace cife
