#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace caustic {

/// Number of OpenMP workers used by the parallel kernels (1 without OpenMP).
int worker_count();

/// Sets the worker count for subsequent kernels; n < 1 restores the default.
void set_worker_count(int n);

/// Runs body(i) for i in [0, n) across workers. Iterations must write only
/// to their own slots. If any iteration throws, the exception from the
/// lowest failing index is rethrown after the loop, so failures do not
/// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace caustic
