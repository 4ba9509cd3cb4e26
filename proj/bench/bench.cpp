// Serial reference vs OpenMP kernels. Usage: amoebakit_bench [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "amoebakit/coam.hpp"
#include "amoebakit/deform.hpp"
#include "amoebakit/spine.hpp"

using namespace amoebakit;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

template <class Result>
void row(const char* name, int repeats, const std::function<Result(Execution)>& kernel) {
    Result serial{}, parallel{};
    const double ts = best_of(repeats, [&] { serial = kernel(Execution::serial); });
    const double tp = best_of(repeats, [&] { parallel = kernel(Execution::parallel); });
    std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, ts, tp, ts / tp, serial == parallel ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

    const auto f = parse_polynomial("-z*w^2 + z^3*w - 7*z*w + 6*w + z");
    const auto window = auto_window(f);
    row<Grid>("amoeba raster 512^2", repeats,
              [&](Execution e) { return rasterize_amoeba(f, window, 512, 512, {}, e).occupancy; });
    row<double>("torus quadrature n=1024", repeats,
                [&](Execution e) { return torus_mean_log(f, {0.3, 0.05}, 1024, e); });

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 2.0);
    PointCloud a, b;
    for (int i = 0; i < 20000; ++i) a.points.push_back({g(rng), g(rng)});
    for (int i = 0; i < 20000; ++i) b.points.push_back({g(rng), g(rng)});
    row<double>("directed Hausdorff 20k x 20k", repeats, [&](Execution e) { return directed_hausdorff(a, b, e); });

    const auto c = parse_polynomial("z + w + 0.5*z*w + z^2*w^2");
    row<Grid>("coamoeba raster 512^2", repeats,
              [&](Execution e) { return rasterize_coamoeba(c, 512, {}, e).occupancy; });
    return 0;
}
