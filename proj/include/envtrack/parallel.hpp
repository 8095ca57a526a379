#pragma once

#include <cstddef>
#include <functional>

namespace envtrack {

// Process-wide worker cap (set from --threads / ENVTRACK_THREADS; default 1).
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Work items must be independent and write only
// to their own slot so results match sequential execution bit for bit.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace envtrack
