#pragma once

#include <cstddef>
#include <functional>

namespace cife {

// Runs body(i) for i in [0, count) across `workers` threads in contiguous
// chunks. Every index writes only to its own output slot, so the result is
// identical for any worker count; reductions over the outputs must happen
// serially afterwards.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

unsigned default_workers();

}  // namespace cife
