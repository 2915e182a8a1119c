#include "gagliardo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace gagliardo {

namespace {
std::atomic<int> g_threads{1};
}

int default_threads() { return g_threads.load(); }

void set_default_threads(int threads) { g_threads.store(std::max(1, threads)); }

int threads_from_environment(int fallback) {
  const char* env = std::getenv("GAGLIARDO_THREADS");
  if (env == nullptr) return fallback;
  try {
    const int v = std::stoi(env);
    return v >= 1 ? v : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn,
                                 int threads) {
  std::vector<double> out(count, 0.0);
  const int workers =
      static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(
                                                        threads > 0 ? threads : default_threads())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  // Interleaved static schedule; each slot is written by exactly one worker.
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < count;
             i += static_cast<std::size_t>(workers))
          out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace gagliardo
