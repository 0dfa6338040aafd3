#pragma once

#include <cstddef>
#include <functional>

namespace chenflow {

// Runs fn(block_index, begin, end) over [0, count) split into fixed-size
// blocks.  Blocks may execute on any worker; callers store per-block results
// and fold them in block order, so every reduction is independent of the
// worker count.
void parallel_for_blocks(std::size_t count, std::size_t block_size, int workers,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t block_count(std::size_t count, std::size_t block_size);

int resolve_workers(int workers);

}  // namespace chenflow
