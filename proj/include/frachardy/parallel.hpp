#ifndef FRACHARDY_PARALLEL_HPP
#define FRACHARDY_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace frachardy {

/// Number of worker threads: hardware concurrency, capped by the
/// FRACHARDY_THREADS environment variable when set.
int thread_count();

/// Runs fn(i) for i in [0,n). Iterations must be independent; they are
/// distributed over thread_count() threads (serial when that is 1).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace frachardy

#endif
