#include "sqgrasp/common/parallel.hpp"

namespace sqgrasp {

namespace {
std::atomic<unsigned> g_default_threads{0};
}

unsigned default_threads() { return g_default_threads.load(std::memory_order_relaxed); }

void set_default_threads(unsigned n) { g_default_threads.store(n, std::memory_order_relaxed); }

unsigned resolve_threads(unsigned requested) {
    unsigned n = requested != 0 ? requested : default_threads();
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace sqgrasp
