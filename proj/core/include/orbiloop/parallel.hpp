#pragma once

#include <functional>

namespace orbiloop {

/// Worker count: ORBILOOP_THREADS if set to a positive integer, else hardware concurrency.
int threadCount();

/// Runs fn(i) for i in [0, n) on up to threadCount() threads. Exceptions are rethrown
/// (the one from the smallest index wins) after all workers finish.
void parallelFor(int n, const std::function<void(int)>& fn);

}  // namespace orbiloop
