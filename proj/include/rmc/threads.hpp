#pragma once

#include <cstdint>
#include <functional>

namespace rmc {

// Resolve a requested thread count: positive values pass through, 0 falls
// back to the RMC_THREADS environment variable, then hardware concurrency.
int resolve_thread_count(int requested);

// Static block partition of [0, n) across `threads` workers. Each index is
// visited exactly once; callers keep determinism by writing only to
// index-owned slots and reducing in index order afterwards.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace rmc
