#pragma once

#include <cstdint>
#include <functional>

namespace barnes {

// Worker count: hardware concurrency, capped by BARNES_ZETA_THREADS, and 1
// while deterministic mode is on.
unsigned worker_count();

void set_deterministic(bool on);
bool deterministic();

// Calls fn(i) for every i in [0, n). Work is split into contiguous blocks;
// callers write results into per-index slots and reduce them in index order,
// so the outcome does not depend on the thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace barnes
