#pragma once

#include <cstdint>
#include <functional>

namespace stlcst {

// Worker count: explicit set_thread_count wins, then the STLCST_THREADS
// environment variable, then hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs fn over disjoint contiguous ranges covering [0, n). Partitioning
// depends only on n and the worker count, so every element is written by
// exactly one worker and results are run-to-run deterministic.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace stlcst
