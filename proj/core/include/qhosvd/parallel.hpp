#pragma once

#include <cstddef>
#include <functional>

namespace qhosvd {

/// Resolves a worker count: `requested` if positive, else the
/// QHOSVD_THREADS environment variable, else hardware parallelism.
std::size_t resolve_threads(std::size_t requested);

/// Runs fn(i) for i in [0, count) on `threads` workers over disjoint index
/// ranges. Callers keep results in per-index slots so the outcome does not
/// depend on the worker count. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace qhosvd
