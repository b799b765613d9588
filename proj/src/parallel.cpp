#include "radner/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace radner::parallel {

namespace {
int g_threads = 1;
}

void set_threads(int n) { g_threads = std::max(1, n); }
int threads() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(g_threads), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(nt);
  std::vector<std::size_t> error_index(nt, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = n * t / nt, hi = n * (t + 1) / nt;
    pool.emplace_back([&, t, lo, hi]() {
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[t] = std::current_exception();
          error_index[t] = i;
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  // deterministic error selection: lowest failing index
  std::size_t best = n;
  std::exception_ptr chosen;
  for (std::size_t t = 0; t < nt; ++t)
    if (errors[t] && error_index[t] < best) {
      best = error_index[t];
      chosen = errors[t];
    }
  if (chosen) std::rethrow_exception(chosen);
}

} // namespace radner::parallel
