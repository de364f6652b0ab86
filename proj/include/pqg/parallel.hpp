#pragma once

#include <cstddef>
#include <functional>

namespace pqg {

// Worker count: hardware concurrency, capped by PQG_THREADS when set.
size_t thread_count();

// Runs f(i) for i in [0, n). Each index is processed exactly once; the first
// exception thrown by any worker is rethrown after all workers finish.
void parallel_for(size_t n, const std::function<void(size_t)>& f);

}  // namespace pqg
