#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace solrig::detail {

// SOLRIG_THREADS overrides the hardware thread count.
inline std::size_t worker_count(std::size_t limit) {
  std::size_t n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SOLRIG_THREADS")) {
    try {
      n = std::stoul(env);
    } catch (const std::exception&) {
    }
  }
  return std::clamp<std::size_t>(n, 1, limit);
}

}  // namespace solrig::detail
