#ifndef WAVELAB_PARALLEL_HPP
#define WAVELAB_PARALLEL_HPP

#include <atomic>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wavelab::par {

// Process-wide execution policy. Elementwise maps write disjoint slots and are
// bitwise reproducible at any thread count; reductions reassociate, so the
// deterministic mode (default) runs them serially in fixed index order.
int  threads();
void set_threads(int n);
bool deterministic();
void set_deterministic(bool on);

template <class Body>
void parallel_for(std::int64_t n, Body&& body)
{
#ifdef _OPENMP
    if (threads() > 1 && n > 256) {
        #pragma omp parallel for schedule(static) num_threads(threads())
        for (std::int64_t i = 0; i < n; ++i)
            body(i);
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i)
        body(i);
}

// Sum of term(i) over i in [0, n). Serial fixed-order in deterministic mode,
// OpenMP reduction otherwise (reassociation tolerance 1e-12 documented).
template <class Term>
double parallel_sum(std::int64_t n, Term&& term)
{
#ifdef _OPENMP
    if (!deterministic() && threads() > 1 && n > 1024) {
        double s = 0.0;
        #pragma omp parallel for schedule(static) num_threads(threads()) reduction(+ : s)
        for (std::int64_t i = 0; i < n; ++i)
            s += term(i);
        return s;
    }
#endif
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
        s += term(i);
    return s;
}

template <class Term>
double parallel_max(std::int64_t n, Term&& term)
{
#ifdef _OPENMP
    if (threads() > 1 && n > 1024) {
        double m = -1e300;
        #pragma omp parallel for schedule(static) num_threads(threads()) reduction(max : m)
        for (std::int64_t i = 0; i < n; ++i) {
            double v = term(i);
            if (v > m) m = v;
        }
        return m;
    }
#endif
    double m = -1e300;
    for (std::int64_t i = 0; i < n; ++i) {
        double v = term(i);
        if (v > m) m = v;
    }
    return m;
}

} // namespace wavelab::par

#endif
