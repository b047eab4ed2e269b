#pragma once

#include <cstddef>
#include <functional>

namespace avoidkit {

/// Worker count: AVOIDKIT_THREADS when set (at least 1), otherwise the
/// hardware concurrency capped at 8.
std::size_t thread_budget();

/// Runs fn(0..count-1) across the thread budget. Each index owns its
/// output slot, so results are schedule-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace avoidkit
