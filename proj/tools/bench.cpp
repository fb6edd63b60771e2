// Compares the OpenMP kernels against their serial references: wall time and
// the largest result deviation. Run from the build directory; no arguments.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "quasispec/bands.hpp"
#include "quasispec/contfrac.hpp"
#include "quasispec/dynamics.hpp"
#include "quasispec/parallel.hpp"
#include "quasispec/potential.hpp"
#include "quasispec/tracemap.hpp"
#include "quasispec/transfer.hpp"

using namespace qs;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds(clock_type::time_point a, clock_type::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

std::vector<double> energy_grid(std::size_t count, double lo, double hi) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
    }
    return g;
}

void report(const char* name, double t_par, double t_ser, double dev) {
    std::printf("%-16s parallel %8.3fs   serial %8.3fs   speedup %5.2fx   "
                "max dev %.3e\n",
                name, t_par, t_ser, t_ser / t_par, dev);
}

} // namespace

int main() {
    set_threads(0);
    std::printf("threads: %d\n", max_threads());

    const ContinuedFraction cf =
        continued_fraction(parse_alpha_spec("golden"), 30);
    const double lambda = 2.0;
    const auto grid = energy_grid(20000, -2.0, 4.0);

    {
        const auto t0 = clock_type::now();
        const auto par = trace_grid(grid, lambda, cf, 12);
        const auto t1 = clock_type::now();
        const auto ser = trace_grid_serial(grid, lambda, cf, 12);
        const auto t2 = clock_type::now();
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dev = std::fmax(dev, std::fabs(par[i] - ser[i]));
        }
        report("trace_grid", seconds(t0, t1), seconds(t1, t2), dev);
    }
    {
        const auto t0 = clock_type::now();
        const auto par = classify_grid(grid, lambda, cf, 12);
        const auto t1 = clock_type::now();
        const auto ser = classify_grid_serial(grid, lambda, cf, 12);
        const auto t2 = clock_type::now();
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dev = std::fmax(dev, par[i].result != ser[i].result ||
                                     par[i].level != ser[i].level);
        }
        report("classify_grid", seconds(t0, t1), seconds(t1, t2), dev);
    }
    {
        const Potential V =
            Potential::circle_map(cf.alpha, cf.alpha, 0.0, lambda);
        const auto small = energy_grid(600, -2.0, 4.0);
        const auto t0 = clock_type::now();
        const auto par = lyapunov_grid(small, V, 20000);
        const auto t1 = clock_type::now();
        const auto ser = lyapunov_grid_serial(small, V, 20000);
        const auto t2 = clock_type::now();
        double dev = 0.0;
        for (std::size_t i = 0; i < small.size(); ++i) {
            dev = std::fmax(dev, std::fabs(par[i] - ser[i]));
        }
        report("lyapunov_grid", seconds(t0, t1), seconds(t1, t2), dev);
    }
    {
        const Potential V =
            Potential::circle_map(cf.alpha, cf.alpha, 0.0, lambda);
        const BoxEigensystem eig = diagonalize(build_box(V, 700));
        const MomentEngine eng(eig, 2.0);
        const auto times = energy_grid(24, 5.0, 200.0);
        const auto t0 = clock_type::now();
        double sum_par = 0.0;
        for (double T : times) {
            sum_par += eng.value(T);
        }
        const auto t1 = clock_type::now();
        double sum_ser = 0.0;
        for (double T : times) {
            sum_ser += eng.value_serial(T);
        }
        const auto t2 = clock_type::now();
        double dev = 0.0;
        for (double T : times) {
            dev = std::fmax(dev,
                            std::fabs(eng.value(T) - eng.value_serial(T)) /
                                std::fabs(eng.value_serial(T)));
        }
        report("moment_value", seconds(t0, t1), seconds(t1, t2), dev);
        std::printf("  (sums %.12e / %.12e)\n", sum_par, sum_ser);
    }
    return 0;
}
