#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "fracwave/kernels.hpp"

using namespace fracwave;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    return v;
}

// Sizes straddling the chunk boundary and the parallel cutoff.
const std::vector<std::size_t> kSizes = {1, 7, 4095, 4096, 4097, 100000};

} // namespace

TEST_CASE("pointwise kernels agree bitwise with the serial reference") {
    for (std::size_t n : kSizes) {
        auto x = random_vector(n, 1000 + n);
        auto y = random_vector(n, 2000 + n);

        auto y1 = y, y2 = y;
        kernels::serial::axpy(1.3, x, y1);
        kernels::axpy(1.3, x, y2);
        CHECK(y1 == y2);

        std::vector<double> o1(n), o2(n);
        kernels::serial::add_scaled(x, -0.7, y, o1);
        kernels::add_scaled(x, -0.7, y, o2);
        CHECK(o1 == o2);

        kernels::serial::multiply(x, y, o1);
        kernels::multiply(x, y, o2);
        CHECK(o1 == o2);

        auto s1 = x, s2 = x;
        kernels::serial::scale(s1, 0.125);
        kernels::scale(s2, 0.125);
        CHECK(s1 == s2);
    }
}

TEST_CASE("apply_multiplier matches the serial reference") {
    const std::size_t n = 6000;
    auto re = random_vector(n, 5);
    auto im = random_vector(n, 6);
    auto mult = random_vector(n, 7);
    std::vector<std::complex<double>> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = b[i] = {re[i], im[i]};

    kernels::serial::apply_multiplier(a, mult);
    kernels::apply_multiplier(b, mult);
    CHECK(a == b);
}

TEST_CASE("reductions match the serial reference to roundoff") {
    for (std::size_t n : kSizes) {
        auto x = random_vector(n, 3000 + n);
        auto y = random_vector(n, 4000 + n);

        CHECK(kernels::sum(x) ==
              doctest::Approx(kernels::serial::sum(x)).epsilon(1e-12));
        CHECK(kernels::dot(x, y) ==
              doctest::Approx(kernels::serial::dot(x, y)).epsilon(1e-12));
        CHECK(kernels::sum_abs_pow(x, 2.5) ==
              doctest::Approx(kernels::serial::sum_abs_pow(x, 2.5)).epsilon(1e-12));
        CHECK(kernels::max_abs(x) == kernels::serial::max_abs(x));
        CHECK(kernels::weighted_square_sum(x, y) ==
              doctest::Approx(kernels::serial::weighted_square_sum(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("chunked reductions are bit-identical across thread counts") {
    const auto x = random_vector(100000, 99);
    const auto y = random_vector(100000, 100);

    const int before = kernels::threads();
    kernels::set_threads(1);
    const double sum1 = kernels::sum(x);
    const double dot1 = kernels::dot(x, y);
    const double pow1 = kernels::sum_abs_pow(x, 3.0);
    kernels::set_threads(4);
    CHECK(kernels::sum(x) == sum1);
    CHECK(kernels::dot(x, y) == dot1);
    CHECK(kernels::sum_abs_pow(x, 3.0) == pow1);
    kernels::set_threads(before);
}
