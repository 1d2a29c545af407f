#pragma once

#include <cstddef>
#include <functional>

namespace chainfountain {

/// Calls body(i) for every i in [0, count). When `parallel` is set the range is
/// split into contiguous chunks across hardware threads; each index is visited
/// exactly once, so results written per index are identical either way.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, bool parallel);

/// True unless CHAINFOUNTAIN_NO_PARALLEL=1 is set in the environment.
bool parallel_enabled_by_environment();

}  // namespace chainfountain
