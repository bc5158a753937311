#pragma once

#include <cstddef>
#include <functional>

namespace mixmin::detail {

// Runs fn(0..n-1) across worker threads. The thread count comes from the
// MIXMIN_THREADS environment variable when set, otherwise from
// std::thread::hardware_concurrency. Exceptions from workers are rethrown
// on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

int configured_thread_count();

}  // namespace mixmin::detail
