#pragma once

#include <cstddef>
#include <functional>

namespace graphent {

/// Hardware concurrency, at least 1.
int default_threads();

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items must write
/// only to their own slot; ordering of results is therefore independent of the
/// thread count. The exception thrown by the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace graphent
