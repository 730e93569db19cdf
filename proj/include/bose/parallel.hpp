#pragma once

#include <cstddef>
#include <functional>

namespace bose {

/// Number of worker threads used by parallel_for. Defaults to 1; the CLI
/// sets it from --threads.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n) on a fixed static partition of the index
/// range. Callers write results into per-index slots and reduce afterwards,
/// so results never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bose
