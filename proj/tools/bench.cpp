// Micro-benchmark comparing the OpenMP grid kernels against the serial
// reference: gradient, Hessian, divergence, and quadrature reductions.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "shellbound/grid.hpp"
#include "shellbound/kernels.hpp"

namespace sb = shellbound;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 513;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 20;
    const sb::Grid g(n);

    sb::ScalarField f(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            f[g.idx(i, j)] = std::sin(3.0 * g.x(i)) * std::cos(2.0 * g.y(j)) + g.x(i) * g.y(j);
    const sb::TensorField h = sb::kernels::hessian(g, f);

    std::printf("n = %d, threads = %d, reps = %d\n", n, omp_get_max_threads(), reps);
    std::printf("%-18s %12s %12s %8s\n", "kernel", "parallel ms", "serial ms", "speedup");

    auto row = [&](const char* name, const std::function<void()>& par,
                   const std::function<void()>& ser) {
        const double tp = time_ms(par, reps);
        const double ts = time_ms(ser, reps);
        std::printf("%-18s %12.3f %12.3f %8.2fx\n", name, tp, ts, ts / tp);
    };

    row("gradient", [&] { sb::kernels::gradient(g, f); },
        [&] { sb::kernels::serial::gradient(g, f); });
    row("hessian", [&] { sb::kernels::hessian(g, f); },
        [&] { sb::kernels::serial::hessian(g, f); });
    row("divergence", [&] { sb::kernels::divergence(g, h); },
        [&] { sb::kernels::serial::divergence(g, h); });
    row("volume_average", [&] { sb::kernels::volume_average(g, f); },
        [&] { sb::kernels::serial::volume_average(g, f); });
    row("average_dot", [&] { sb::kernels::volume_average_dot(g, h, h); },
        [&] { sb::kernels::serial::volume_average_dot(g, h, h); });
    return 0;
}
