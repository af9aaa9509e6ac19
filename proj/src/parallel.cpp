#include "ptlab/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace ptlab {

std::size_t thread_count() {
  if (const char* env = std::getenv("PTLAB_THREADS")) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc() && *ptr == '\0' && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace ptlab
