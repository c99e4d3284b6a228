#include "parallel.hpp"

namespace qlink {

namespace {
std::atomic<int> g_threads{0};
}

int max_threads() {
  int n = g_threads.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_max_threads(int n) { g_threads = n > 0 ? n : 0; }

}  // namespace qlink
