#pragma once

#include <cstddef>
#include <functional>

namespace fracprop {

/// Worker count: hardware concurrency, capped by FRACPROP_THREADS when set.
unsigned thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracprop
