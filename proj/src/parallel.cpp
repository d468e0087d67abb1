#include "wavelab/parallel.hpp"

namespace wavelab::par {

namespace {
std::atomic<int> g_threads{
#ifdef _OPENMP
    0 // 0 = resolve from omp on first use
#else
    1
#endif
};
std::atomic<bool> g_deterministic{true};
} // namespace

int threads()
{
    int t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
#ifdef _OPENMP
        t = omp_get_max_threads();
#else
        t = 1;
#endif
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_threads(int n) { g_threads.store(n < 1 ? 1 : n, std::memory_order_relaxed); }

bool deterministic() { return g_deterministic.load(std::memory_order_relaxed); }

void set_deterministic(bool on) { g_deterministic.store(on, std::memory_order_relaxed); }

} // namespace wavelab::par
