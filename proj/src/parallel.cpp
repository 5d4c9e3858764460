#include "abelint/parallel.hpp"

namespace abelint {

namespace {
std::atomic<int> g_threads{1};
}

int default_thread_count() { return g_threads.load(); }

void set_default_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }

} // namespace abelint
