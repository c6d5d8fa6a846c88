#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "fracwave/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracwave::kernels {

namespace {

std::atomic<int> g_threads{0}; // 0 = library default

// Arrays below this size are not worth a parallel region.
constexpr std::size_t kParallelCutoff = 1 << 14;

int effective_threads() {
#ifdef _OPENMP
    const int requested = g_threads.load(std::memory_order_relaxed);
    return requested > 0 ? requested : omp_get_max_threads();
#else
    return 1;
#endif
}

bool go_parallel(std::size_t n) {
    return n >= kParallelCutoff && effective_threads() > 1;
}

template <typename ChunkFn>
double chunked_reduce(std::size_t n, ChunkFn&& chunk_sum) {
    const std::size_t n_chunks = (n + kReductionChunk - 1) / kReductionChunk;
    if (n_chunks <= 1) return chunk_sum(std::size_t{0}, n);

    std::vector<double> partial(n_chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(n))
#endif
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t hi = std::min(lo + kReductionChunk, n);
        partial[static_cast<std::size_t>(c)] = chunk_sum(lo, hi);
    }
    // Combine in chunk order: the value is independent of the thread count.
    double acc = 0.0;
    for (double v : partial) acc += v;
    return acc;
}

} // namespace

void set_threads(int n) { g_threads.store(n, std::memory_order_relaxed); }

int threads() { return effective_threads(); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const long long n = static_cast<long long>(x.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(x.size()))
#endif
    for (long long i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(std::span<const double> x, double a, std::span<const double> y,
                std::span<double> out) {
    const long long n = static_cast<long long>(x.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(x.size()))
#endif
    for (long long i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void scale(std::span<double> x, double a) {
    const long long n = static_cast<long long>(x.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(x.size()))
#endif
    for (long long i = 0; i < n; ++i) x[i] *= a;
}

void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out) {
    const long long n = static_cast<long long>(x.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(x.size()))
#endif
    for (long long i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void apply_multiplier(std::span<std::complex<double>> spec,
                      std::span<const double> mult) {
    const long long n = static_cast<long long>(spec.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(spec.size()))
#endif
    for (long long i = 0; i < n; ++i) spec[i] *= mult[i];
}

double sum(std::span<const double> x) {
    return chunked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += x[i];
        return acc;
    });
}

double dot(std::span<const double> x, std::span<const double> y) {
    return chunked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += x[i] * y[i];
        return acc;
    });
}

double sum_abs_pow(std::span<const double> x, double p) {
    return chunked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += std::pow(std::fabs(x[i]), p);
        return acc;
    });
}

double max_abs(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t n_chunks = (n + kReductionChunk - 1) / kReductionChunk;
    if (n_chunks <= 1) return serial::max_abs(x);

    std::vector<double> partial(n_chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads()) \
    if (go_parallel(n))
#endif
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t hi = std::min(lo + kReductionChunk, n);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::fabs(x[i]));
        partial[static_cast<std::size_t>(c)] = m;
    }
    return *std::max_element(partial.begin(), partial.end());
}

double weighted_square_sum(std::span<const double> w, std::span<const double> x) {
    return chunked_reduce(x.size(), [&](std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += w[i] * x[i] * x[i];
        return acc;
    });
}

} // namespace fracwave::kernels
