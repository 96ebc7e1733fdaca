#pragma once

#include <cstddef>
#include <functional>

namespace airylab {

/// Worker count: AIRYLAB_THREADS if set and positive, otherwise the hardware
/// concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks, one per
/// worker; each index is processed exactly once, so callers writing to slot i
/// get results independent of the thread count. The first exception thrown by
/// any body is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace airylab
