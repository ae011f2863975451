#pragma once

#include <cstddef>
#include <functional>

namespace fireline {

// Worker count: FIRELINE_THREADS if set, otherwise hardware concurrency.
int thread_count();

// Runs f(i) for i in [0, n) over thread_count() threads in contiguous blocks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace fireline
