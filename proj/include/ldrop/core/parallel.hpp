#pragma once

#include <cstddef>
#include <functional>

namespace ldrop {

// Worker count used by parallel_for. Results never depend on it: every parallel
// loop in the library writes to per-index slots that are reduced in index order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for every i in [0, n). If any call throws, the exception of the
// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ldrop
