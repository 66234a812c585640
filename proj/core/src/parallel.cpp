#include "xgsc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace xgsc {
namespace {

std::atomic<bool> g_strict{false};

std::size_t env_thread_cap() {
  const char* raw = std::getenv("SPECLAIN_THREADS");
  if (raw == nullptr) return 0;
  try {
    const long value = std::stol(raw);
    return value > 0 ? static_cast<std::size_t>(value) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

std::size_t thread_limit() {
  if (g_strict.load()) return 1;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const std::size_t cap = env_thread_cap(); cap > 0) {
    threads = std::min(threads, cap);
  }
  return threads;
}

void set_strict_sequential(bool strict) { g_strict.store(strict); }
bool strict_sequential() { return g_strict.load(); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min(thread_limit(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t block = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace xgsc
