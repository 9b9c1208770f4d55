#pragma once

#include <functional>

namespace sidkit {

// Worker count resolution: explicit request > SIDKIT_THREADS > hardware.
// 0 or "auto" means hardware concurrency; the result is always >= 1.
int resolve_threads(int requested = -1);

// Runs f(i) for i in [0, n). Work items must be independent; outputs must
// be written to disjoint locations so results do not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& f, int threads = -1);

}  // namespace sidkit
