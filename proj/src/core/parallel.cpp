#include "ldrop/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ldrop {

namespace {
std::atomic<unsigned> g_threads{1};
// nested loops run inline on the worker that reached them
thread_local bool t_inside = false;

struct InsideGuard {
  bool saved;
  InsideGuard() : saved(t_inside) { t_inside = true; }
  ~InsideGuard() { t_inside = saved; }
};
}

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

unsigned thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const unsigned workers =
      t_inside ? 1u : static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));

  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto record = [&](std::size_t i) {
    std::lock_guard<std::mutex> lock(mu);
    if (i < failed_index) {
      failed_index = i;
      failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        record(i);
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&] {
      InsideGuard guard;
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          record(i);
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ldrop
