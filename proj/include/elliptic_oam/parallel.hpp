#pragma once

#include <cstddef>
#include <functional>

namespace elliptic_oam {

// Worker cap from ELLIPTIC_OAM_THREADS (positive integer), defaulting to the
// hardware concurrency.
unsigned worker_count() noexcept;

// Runs body(i) for i in [0, n) over worker_count() threads with contiguous
// chunks. The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace elliptic_oam
