// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <functional>

namespace lmsmooth::par {

/// Worker cap: LMSMOOTH_THREADS if set (clamped to >= 1), else the hardware
/// concurrency.
unsigned max_threads();

/// Runs fn(i) for i in [0, n). Each index must write only its own output
/// slot; with that discipline results are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lmsmooth::par
