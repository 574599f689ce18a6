#pragma once

#include <cstddef>
#include <functional>

namespace kreinshift {

/// Worker-thread cap: KREINSHIFT_THREADS if set (clamped to >= 1),
/// otherwise std::thread::hardware_concurrency().
int thread_cap();

/// Number of chunks used by parallel_chunks. Fixed so that chunk boundaries
/// never depend on the thread count.
inline constexpr std::size_t kChunkCount = 64;

/// Splits [0, n) into kChunkCount contiguous chunks and calls
/// fn(begin, end, chunk_index) for each, possibly on worker threads.
/// Chunks are contiguous, iteration inside a chunk is sequential, and any
/// reduction keyed by chunk_index can be combined in index order afterwards,
/// which keeps results bit-identical for every thread count.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace kreinshift
