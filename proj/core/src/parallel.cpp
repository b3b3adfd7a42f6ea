#include "lyapcert/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lyapcert {

int thread_cap(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int cap = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("LYAPCERT_THREADS")) {
    int limit = std::atoi(env);
    if (limit > 0) cap = std::min(cap, limit);
  }
  return std::max(1, std::min(cap, hw));
}

void parallel_for(int n, const std::function<void(int)>& fn, int max_threads) {
  if (n <= 0) return;
  const int workers = std::min(thread_cap(max_threads), n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lyapcert
