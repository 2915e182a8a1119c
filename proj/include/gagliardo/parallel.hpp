#pragma once

// Deterministic data-parallel helpers. Work items are evaluated independently
// and reduced in a fixed order, so results do not depend on the thread count.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gagliardo {

/// Thread count used by library loops (>= 1). Defaults to 1.
int default_threads();
void set_default_threads(int threads);

/// Reads GAGLIARDO_THREADS; returns `fallback` when unset or malformed.
int threads_from_environment(int fallback = 1);

/// Evaluates fn(i) for i in [0, count) and stores the results by index.
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& fn,
                                 int threads = 0);

/// Pairwise (tree) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace gagliardo
