#ifndef RADNER_PARALLEL_HPP
#define RADNER_PARALLEL_HPP

#include <cstddef>
#include <functional>

// Deterministic data parallelism: work items are indexed, each thread owns a
// contiguous chunk, and results land in caller-owned slots, so the outcome
// of any parallel scan is a pure function of the inputs and never of the
// thread count or scheduling.

namespace radner::parallel {

/// Set the thread budget (0 or 1 disables parallelism). The command line
/// seeds this from --threads / RADNER_THREADS.
void set_threads(int n);
int threads();

/// Run body(i) for i in [0, n), split into contiguous per-thread chunks.
/// The first exception thrown (lowest index wins) is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace radner::parallel

#endif
