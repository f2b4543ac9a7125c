#pragma once

#include <cstddef>
#include <functional>

namespace texlbp {

// 0 or negative -> hardware concurrency (at least 1).
int resolve_threads(int requested);

// Runs body(0..count-1) over a small worker pool. Indices are handed out
// atomically; the first exception thrown by any body is rethrown after all
// workers join. Runs inline when threads <= 1 or count < 2.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace texlbp
