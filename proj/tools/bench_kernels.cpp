// Benchmark comparing the OpenMP kernels against the serial reference, plus
// the end-to-end transform and operator paths they feed.
//
//   fracwave-bench [size] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "fracwave/kernels.hpp"
#include "fracwave/spectral.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(int repeats, const auto& fn) {
    fn(); // warm-up
    const auto start = clock_type::now();
    for (int r = 0; r < repeats; ++r) fn();
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s %10.4f ms %10.4f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    using namespace fracwave;

    const std::size_t size = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1 << 20;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 20;

    std::vector<double> x(size), y(size), z(size);
    for (std::size_t i = 0; i < size; ++i) {
        x[i] = std::sin(0.001 * static_cast<double>(i));
        y[i] = std::cos(0.002 * static_cast<double>(i));
    }

    std::printf("kernel benchmark: size = %zu, repeats = %d, threads = %d\n\n",
                size, repeats, kernels::threads());
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    report("axpy",
           time_ms(repeats, [&] { kernels::serial::axpy(1.0001, x, z); }),
           time_ms(repeats, [&] { kernels::axpy(1.0001, x, z); }));
    report("multiply",
           time_ms(repeats, [&] { kernels::serial::multiply(x, y, z); }),
           time_ms(repeats, [&] { kernels::multiply(x, y, z); }));
    report("sum",
           time_ms(repeats, [&] { volatile double s = kernels::serial::sum(x); (void)s; }),
           time_ms(repeats, [&] { volatile double s = kernels::sum(x); (void)s; }));
    report("dot",
           time_ms(repeats, [&] { volatile double s = kernels::serial::dot(x, y); (void)s; }),
           time_ms(repeats, [&] { volatile double s = kernels::dot(x, y); (void)s; }));
    report("sum_abs_pow(2.5)",
           time_ms(repeats, [&] { volatile double s = kernels::serial::sum_abs_pow(x, 2.5); (void)s; }),
           time_ms(repeats, [&] { volatile double s = kernels::sum_abs_pow(x, 2.5); (void)s; }));
    report("max_abs",
           time_ms(repeats, [&] { volatile double s = kernels::serial::max_abs(x); (void)s; }),
           time_ms(repeats, [&] { volatile double s = kernels::max_abs(x); (void)s; }));
    report("weighted_square_sum",
           time_ms(repeats, [&] { volatile double s = kernels::serial::weighted_square_sum(x, y); (void)s; }),
           time_ms(repeats, [&] { volatile double s = kernels::weighted_square_sum(x, y); (void)s; }));

    // Operator path: the multiplier kernel inside a full transform round trip.
    const Grid grid = make_grid(1, 4096, 2.0 * std::numbers::pi);
    Field u = Field::zeros(grid);
    for (int j = 0; j < grid.points_per_axis; ++j)
        u.samples[static_cast<std::size_t>(j)] = std::sin(3.0 * grid.coordinate(j));
    const double lap_ms = time_ms(repeats, [&] {
        volatile double s = spectral::l2_norm(spectral::frac_laplacian(u, 0.75));
        (void)s;
    });
    std::printf("\nfrac_laplacian n=4096 round trip: %.4f ms\n", lap_ms);
    return 0;
}
