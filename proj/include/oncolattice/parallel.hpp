#ifndef ONCOLATTICE_PARALLEL_HPP
#define ONCOLATTICE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace oncolattice {

/// requested > 0 wins; otherwise ONCOLATTICE_THREADS (0 = auto); otherwise hardware concurrency.
std::size_t resolve_thread_count(std::size_t requested = 0);

/// Runs body(i) for i in [0, n). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t threads = 0);

}  // namespace oncolattice

#endif  // ONCOLATTICE_PARALLEL_HPP
