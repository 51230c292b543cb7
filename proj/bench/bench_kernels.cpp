// Serial reference vs OpenMP kernels. Usage: bench_kernels [n ...]
// Thread count follows AXIMHD_THREADS (0 or unset: runtime default).

#include <aximhd/grid.hpp>
#include <aximhd/kernels.hpp>
#include <aximhd/parallel.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

using namespace aximhd;
namespace k = aximhd::kernels;

namespace {

// Median-free but warm: best of several repetitions, microseconds per call.
double time_us(const std::function<void()>& f, int reps) {
    f();
    double best = 1e300;
    for (int r = 0; r < 5; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i) f();
        const double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, us / reps);
    }
    return best;
}

volatile double sink;

} // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    std::vector<int> sizes;
    for (int a = 1; a < argc; ++a) sizes.push_back(std::atoi(argv[a]));
    if (sizes.empty()) sizes = {64, 128, 256, 512};

    std::printf("threads: %d\n", max_threads());
    std::printf("%-6s %-18s %12s %12s %8s %s\n", "n", "kernel", "serial us", "parallel us", "speedup", "equal");
    for (int n : sizes) {
        const Grid g = make_grid(n, n, 4.0, 4.0);
        const auto st = k::make_radial_stencil(g);
        std::mt19937_64 rng(n);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> f(g.size()), ur(g.size()), uz(g.size()), a(g.size()), b(g.size());
        for (std::size_t m = 0; m < g.size(); ++m) {
            f[m] = u(rng);
            ur[m] = u(rng);
            uz[m] = u(rng);
        }
        const int reps = std::max(1, (1 << 22) / static_cast<int>(g.size()));

        struct Pair {
            const char* name;
            std::function<void(std::vector<double>&)> serial, parallel;
        };
        const std::vector<Pair> pairs = {
            {"laplace5d", [&](auto& o) { k::serial::laplace5d(g, st, f, o); },
             [&](auto& o) { k::parallel::laplace5d(g, st, f, o); }},
            {"advect_upwind1", [&](auto& o) { k::serial::advect_upwind1(g, ur, uz, f, o); },
             [&](auto& o) { k::parallel::advect_upwind1(g, ur, uz, f, o); }},
            {"advect_muscl", [&](auto& o) { k::serial::advect_muscl(g, ur, uz, f, o); },
             [&](auto& o) { k::parallel::advect_muscl(g, ur, uz, f, o); }},
            {"advect_centered", [&](auto& o) { k::serial::advect_centered(g, ur, uz, f, o); },
             [&](auto& o) { k::parallel::advect_centered(g, ur, uz, f, o); }},
            {"weighted_l2", [&](auto& o) { o[0] = k::serial::weighted_power_sum(g, f, 2.0); },
             [&](auto& o) { o[0] = k::parallel::weighted_power_sum(g, f, 2.0); }},
            {"max_abs", [&](auto& o) { o[0] = k::serial::max_abs(f); },
             [&](auto& o) { o[0] = k::parallel::max_abs(f); }},
        };
        for (const auto& p : pairs) {
            const double ts = time_us([&] { p.serial(a); }, reps);
            const double tp = time_us([&] { p.parallel(b); }, reps);
            p.serial(a);
            p.parallel(b);
            std::printf("%-6d %-18s %12.1f %12.1f %8.2f %s\n", n, p.name, ts, tp, ts / tp, a == b ? "yes" : "NO");
        }
        sink = a[0] + b[0];
    }
    return 0;
}
