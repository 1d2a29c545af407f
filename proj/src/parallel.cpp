#include "chainfountain/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <vector>

namespace chainfountain {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, bool parallel) {
  const std::size_t workers =
      parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

bool parallel_enabled_by_environment() {
  const char* flag = std::getenv("CHAINFOUNTAIN_NO_PARALLEL");
  return !(flag != nullptr && std::string_view(flag) == "1");
}

}  // namespace chainfountain
