#pragma once

#include <functional>

namespace wf {

// Worker count: WITNESS_FORGE_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Calls fn(i) for i in [0, n). Work is split into contiguous chunks so the
// result of each index never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

} // namespace wf
