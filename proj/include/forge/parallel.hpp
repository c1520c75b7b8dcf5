#pragma once

#include <cstddef>
#include <functional>

namespace forge {

/// Worker count: FORGE_THREADS when set and positive, else hardware concurrency.
unsigned thread_count();

/// Splits [0, n) into contiguous chunks of `grain` indices and runs
/// fn(begin, end) for each chunk on up to thread_count() threads. Chunk
/// boundaries depend only on n and grain, never on the thread count.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace forge
