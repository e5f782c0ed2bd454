#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace varlp {

// Worker cap: VARLP_THREADS if set, otherwise the hardware default.
// A programmatic override wins over both (used by determinism tests).
int max_threads();
void set_max_threads(int n); // n <= 0 restores the environment default

// Run body(i) for i in [0, n). Work is split into contiguous blocks; callers
// must write results into index-addressed slots so that the outcome is
// independent of the schedule.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace varlp
