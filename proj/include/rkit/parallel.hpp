#pragma once

#include <cstddef>
#include <functional>

namespace rkit {

/// hardware_concurrency, capped by ROBERTSON_KIT_THREADS when set to a positive integer.
std::size_t thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. The first
/// exception thrown by any call is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rkit
