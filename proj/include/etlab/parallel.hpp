#pragma once

#include <cstddef>
#include <functional>

namespace etlab {

// worker count: ET_LAB_THREADS if set (>= 1), otherwise hardware concurrency
int thread_count();

// runs body(i) for i in [0, n); each index is written by exactly one worker,
// so results do not depend on the thread count
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace etlab
