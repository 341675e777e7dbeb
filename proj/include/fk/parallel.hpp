#pragma once

#include <cstddef>
#include <functional>

namespace fk {

/// Worker count from FK_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write to disjoint slots so the result never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fk
