// Deterministic parallel map over an index range. Each index writes only
// its own output slot, so results are identical for any thread count.
// Thread count: SPINCHAIN_THREADS (default: hardware concurrency).

#pragma once

#include <cstddef>
#include <functional>

namespace spinchain {

int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace spinchain
