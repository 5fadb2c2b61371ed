#pragma once

#include <cstddef>
#include <functional>

namespace zmclab {

/// Worker count for parallel sampling: the ZMCLAB_THREADS environment
/// variable when set to a positive integer, hardware concurrency otherwise,
/// always at least 1.
int worker_count();

/// Run body(i) for i in [0, n) across the worker pool.  Each index writes
/// only its own output slot, so results are identical for any pool size;
/// the first exception thrown by a worker is rethrown after the join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace zmclab
