#pragma once

#include <cstdint>
#include <functional>

namespace loopforge {

// Worker count for enumeration scans. LOOPFORGE_THREADS overrides
// hardware_concurrency; always >= 1.
int worker_count();

// Splits [0, n) into contiguous chunks and runs fn(begin, end, worker) on up
// to `threads` workers (0 = worker_count()). Callers keep determinism by
// accumulating into per-worker state and merging in worker order.
void parallel_chunks(std::uint64_t n, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& fn);

} // namespace loopforge
