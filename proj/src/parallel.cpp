#include "geodesy/parallel.hpp"

#include <atomic>
#include <exception>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geodesy::par {

namespace {

std::atomic<int> g_max_threads{-2};  // -2 = unresolved
std::atomic<bool> g_serial{false};

int resolve_env() {
  const char* env = std::getenv("GEODESY_THREADS");
  if (!env) return 0;
  int n = std::atoi(env);
  return n > 0 ? n : 0;
}

}  // namespace

int max_threads() {
  int v = g_max_threads.load();
  if (v == -2) {
    v = resolve_env();
    g_max_threads.store(v);
  }
  return v;
}

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 0); }

bool serial_mode() { return g_serial.load(); }
void set_serial_mode(bool on) { g_serial.store(on); }

void for_each_index(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
#ifdef _OPENMP
  if (!serial_mode() && n > 1 && !omp_in_parallel()) {
    // Exceptions may not escape the parallel region; rethrow the first one.
    std::exception_ptr first;
    std::atomic<bool> failed{false};
    auto guarded = [&](std::int64_t i) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first = std::current_exception();
      }
    };
    int cap = max_threads();
    if (cap > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(cap)
      for (std::int64_t i = 0; i < n; ++i) guarded(i);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t i = 0; i < n; ++i) guarded(i);
    }
    if (first) std::rethrow_exception(first);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace geodesy::par
