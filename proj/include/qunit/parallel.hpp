#pragma once

#include <cstddef>
#include <functional>

namespace qunit {

/// Worker count for a request: 0 means one per hardware thread.
unsigned resolve_threads(unsigned requested);

/// Calls fn(i) for every i in [0, count), split into contiguous chunks
/// across `threads` workers. fn must only write to slots owned by i.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace qunit
