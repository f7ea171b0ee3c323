#include "lrr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace lrr {
namespace {

int threads_from_env() {
  const char* env = std::getenv("LRR_NUM_THREADS");
  if (env == nullptr) return 1;
  try {
    const int v = std::stoi(env);
    return v > 0 ? v : 1;
  } catch (...) {
    return 1;
  }
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> value{threads_from_env()};
  return value;
}

}  // namespace

int num_threads() { return thread_setting().load(); }

void set_num_threads(int threads) { thread_setting().store(threads > 0 ? threads : 1); }

}  // namespace lrr
