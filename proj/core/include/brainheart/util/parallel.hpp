#pragma once

#include <cstddef>
#include <functional>

namespace bh {

/// Runs body(i) for i in [0, n) on up to `jobs` threads (jobs <= 1 runs inline).
/// Work items must write only to their own output slot; the first exception
/// thrown by any item is rethrown after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace bh
