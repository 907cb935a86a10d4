#pragma once

#include <cstddef>
#include <functional>

namespace remeta {

/// Runs fn(0) ... fn(n - 1) on up to `threads` worker threads (0 or 1 runs
/// inline). Tasks must write only to their own output slots. If any task
/// throws, the exception of the lowest failing index is rethrown after all
/// workers have joined.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace remeta
