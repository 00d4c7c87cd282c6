#pragma once

#include <cstddef>
#include <functional>

namespace qes::util {

// Worker count: QES_THREADS if set and positive, else the hardware count.
unsigned thread_count();
void set_thread_count(unsigned n);

// Calls f(i) for i in [0, n); results must be written to disjoint slots so
// that output does not depend on scheduling. Exceptions are rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace qes::util
