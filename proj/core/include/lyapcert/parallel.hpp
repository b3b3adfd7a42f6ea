#pragma once

#include <functional>

namespace lyapcert {

// Effective worker count: min(requested or hardware, LYAPCERT_THREADS).
// requested == 0 means "pick a default".
int thread_cap(int requested = 0);

// Runs fn(0..n-1) across up to max_threads workers and joins. Results must
// be written into caller-owned slots indexed by i, which keeps the merged
// output deterministic. The first exception, if any, is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn, int max_threads = 0);

}  // namespace lyapcert
