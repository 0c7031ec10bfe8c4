#include "barnes_zeta/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace barnes {
namespace {

std::atomic<bool> g_deterministic{false};

unsigned env_cap() {
  const char* env = std::getenv("BARNES_ZETA_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 0;
  return static_cast<unsigned>(std::min<long>(v, 1024));
}

}  // namespace

unsigned worker_count() {
  if (g_deterministic.load()) return 1;
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const unsigned cap = env_cap(); cap > 0) n = std::min(n, cap);
  return n;
}

void set_deterministic(bool on) { g_deterministic.store(on); }
bool deterministic() { return g_deterministic.load(); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const std::int64_t workers = std::min<std::int64_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  const std::int64_t block = (n + workers - 1) / workers;
  for (std::int64_t t = 0; t < workers; ++t) {
    const std::int64_t lo = t * block;
    const std::int64_t hi = std::min(n, lo + block);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace barnes
