#ifndef LAPX_PARALLEL_HPP_
#define LAPX_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace lapx {

/// Worker count: LAPX_NUM_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
int num_threads();

/// Runs task(i) for i in [0, n_tasks). Tasks must write to disjoint
/// outputs; results never depend on the number of workers. The first
/// exception thrown by a task is rethrown on the calling thread.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task);

/// Chunk size used when splitting batches of samples/evaluations.
inline constexpr std::size_t kChunkSize = 4096;

inline std::size_t num_chunks(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

}  // namespace lapx

#endif  // LAPX_PARALLEL_HPP_
