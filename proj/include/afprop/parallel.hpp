#pragma once

#include <cstddef>
#include <functional>

namespace afprop {

// AFPROP_THREADS if set and positive, else the hardware concurrency.
std::size_t thread_budget();

// Splits [0, count) into contiguous chunks, one per worker and at least grain
// items each; fn(begin, end). Results must not depend on the split for output
// to be reproducible.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t grain = 1);

}  // namespace afprop
