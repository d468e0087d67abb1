// Timing comparison of the OpenMP kernels against their serial reference
// implementations: leapfrog stepping, radial mollification, weighted
// reductions, and the divergence-identity scan.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "wavelab/initial_data.hpp"
#include "wavelab/multiplier.hpp"
#include "wavelab/parallel.hpp"
#include "wavelab/quadrature.hpp"
#include "wavelab/solver.hpp"

using namespace wavelab;

namespace {

double time_of(const std::function<void()>& body, int reps)
{
    body(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double parallel)
{
    std::printf("%-28s %10.4f ms %10.4f ms   x%.2f\n", name, 1e3 * serial, 1e3 * parallel,
                serial / parallel);
}

} // namespace

int main()
{
    const int threads = par::threads();
    std::printf("bench_kernels: serial vs OpenMP (%d threads)\n", threads);
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    // leapfrog stepping: a full linear solve
    {
        const RadialGrid g = build_grid(40.0, 16384, 0.9, 0.0);
        const DataPair p = profile("gaussian", 1.0, 0.0, 1.0, g);
        auto run = [&] { solve_linear(p, CoefficientField::zero(), nullptr, 20.0, g, {}); };
        par::set_threads(1);
        const double s = time_of(run, 2);
        par::set_threads(threads);
        const double q = time_of(run, 2);
        row("leapfrog solve", s, q);
    }

    // shell-formula mollification
    {
        const RadialGrid g = build_grid(4.0, 8192, 0.9, 0.0);
        auto fn = [](double r) { return std::exp(-r * r); };
        auto run = [&] { mollify_profile(fn, 8, g); };
        par::set_threads(1);
        const double s = time_of(run, 3);
        par::set_threads(threads);
        const double q = time_of(run, 3);
        row("mollify (nr = 8192)", s, q);
    }

    // weighted reduction
    {
        const RadialGrid g = build_grid(100.0, 2000000, 0.9, 0.0);
        const auto w = power_cell_weights(g, 2.0);
        std::vector<double> v(g.nodes());
        for (int i = 0; i < g.nodes(); ++i) v[i] = std::sin(1e-3 * i);
        auto run = [&] {
            volatile double x = weighted_sum(w, v);
            (void)x;
        };
        par::set_threads(1);
        par::set_deterministic(true);
        const double s = time_of(run, 10);
        par::set_threads(threads);
        par::set_deterministic(false);
        const double q = time_of(run, 10);
        par::set_deterministic(true);
        row("weighted reduction (2e6)", s, q);
    }

    // divergence-identity scan
    {
        const RadialGrid g = build_grid(6.0, 1024, 0.9, 0.0);
        const MultiplierField mf = make_kss(0.5);
        auto run = [&] { divergence_residual(mms_scenario(), mf, g, 1.0); };
        par::set_threads(1);
        const double s = time_of(run, 2);
        par::set_threads(threads);
        const double q = time_of(run, 2);
        row("identity scan (1024^2)", s, q);
    }
    return 0;
}
