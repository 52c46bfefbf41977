#pragma once

#include <cstddef>
#include <functional>

namespace fracext {

// 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Static contiguous chunking; body(begin, end) must only touch its own range.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 64);

}  // namespace fracext
