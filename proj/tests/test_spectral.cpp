#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "fracwave/spectral.hpp"
#include "test_support.hpp"

using namespace fracwave;
using namespace test_support;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("make_grid accepts the documented shapes and rejects the rest") {
    const Grid g1 = make_grid(1, 64, 2.0 * kPi);
    CHECK(g1.spacing() == doctest::Approx(2.0 * kPi / 64).epsilon(1e-15));
    CHECK(g1.signed_mode(0) == 0);
    CHECK(g1.signed_mode(32) == -32);
    CHECK(g1.signed_mode(63) == -1);
    CHECK(g1.wavenumber(1) == doctest::Approx(1.0));
    CHECK(g1.wavenumber(63) == doctest::Approx(-1.0));

    const Grid g2 = make_grid(2, 8, 1.0);
    CHECK(g2.point_count() == 64);
    CHECK(g2.wavenumber(1) == doctest::Approx(2.0 * kPi));
    CHECK(g2.cell_volume() == doctest::Approx(1.0 / 64.0));

    CHECK_THROWS_AS(make_grid(1, 63, 1.0), Error);
    CHECK_THROWS_AS(make_grid(1, 4, 1.0), Error);
    CHECK_THROWS_AS(make_grid(3, 64, 1.0), Error);
    CHECK_THROWS_AS(make_grid(1, 64, -1.0), Error);
}

TEST_CASE("frac_laplacian annihilates constants and keeps zero mean") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const Field ones = Field::constant(grid, 1.0);
    for (double s : {0.25, 0.7, 1.0, 1.5}) {
        const Field out = spectral::frac_laplacian(ones, s);
        for (double v : out.samples) CHECK(std::fabs(v) <= 1e-14);
    }

    std::mt19937_64 rng(7);
    const Field u = random_band_limited(grid, 10, rng, /*zero_mean=*/false);
    const Field out = spectral::frac_laplacian(u, 0.6);
    CHECK(std::fabs(spectral::mass(out)) <= 1e-12);
}

TEST_CASE("plane waves are exact eigenfunctions: |k|^(2s) sin(kx)") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    for (double s : {0.25, 0.5, 1.0, 1.5}) {
        for (int k : {1, 2, 3, 5, 11}) {
            const Field u = sine_mode(grid, k);
            const Field got = spectral::frac_laplacian(u, s);
            const double factor = std::pow(static_cast<double>(k) * k, s);
            double worst = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                worst = std::max(worst,
                                 std::fabs(got.samples[i] - factor * u.samples[i]));
            CHECK(worst <= 1e-12 * factor);
        }
    }
    // sin(3x) at s = 0.7 -> 3^1.4 sin(3x)
    const Field u3 = sine_mode(grid, 3);
    const Field got = spectral::frac_laplacian(u3, 0.7);
    const double factor = std::pow(3.0, 1.4);
    for (std::size_t i = 0; i < u3.size(); ++i)
        CHECK(got.samples[i] == doctest::Approx(factor * u3.samples[i]).epsilon(1e-12));
}

TEST_CASE("s = 1 reproduces -u'' (naive-DFT differentiation oracle)") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    std::mt19937_64 rng(11);
    const Field u = random_band_limited(grid, 12, rng);

    const Field minus_uxx = [&] {
        Field d2 = naive_derivative_1d(naive_derivative_1d(u));
        for (double& v : d2.samples) v = -v;
        return d2;
    }();
    const Field got = spectral::frac_laplacian(u, 1.0);

    const double scale = spectral::l2_norm(minus_uxx);
    CHECK(l2_difference(got, minus_uxx) <= 1e-10 * scale);
}

TEST_CASE("structural properties of (-Delta)^s over random fields") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    std::mt19937_64 rng(23);
    const double s = 0.8;

    for (int trial = 0; trial < 100; ++trial) {
        const Field u = random_band_limited(grid, 10, rng);
        const Field v = random_band_limited(grid, 10, rng);
        const double nu = spectral::l2_norm(u);
        const double nv = spectral::l2_norm(v);

        // self-adjointness
        const double lhs = spectral::inner_product(spectral::frac_laplacian(u, s), v);
        const double rhs = spectral::inner_product(u, spectral::frac_laplacian(v, s));
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * nu * nv);

        // linearity
        Field combo = Field::zeros(grid);
        for (std::size_t i = 0; i < combo.size(); ++i)
            combo.samples[i] = 2.5 * u.samples[i] - 1.25 * v.samples[i];
        const Field a_combo = spectral::frac_laplacian(combo, s);
        const Field au = spectral::frac_laplacian(u, s);
        const Field av = spectral::frac_laplacian(v, s);
        double worst = 0.0;
        for (std::size_t i = 0; i < combo.size(); ++i)
            worst = std::max(worst, std::fabs(a_combo.samples[i] - 2.5 * au.samples[i] +
                                              1.25 * av.samples[i]));
        CHECK(worst <= 1e-10 * (nu + nv));
    }

    // semigroup: A^{s1} A^{s2} = A^{s1+s2}
    for (auto [s1, s2] : {std::pair{0.3, 0.9}, std::pair{0.5, 0.5}, std::pair{1.0, 0.25}}) {
        const Field u = random_band_limited(grid, 10, rng);
        const Field once = spectral::frac_laplacian(u, s1 + s2);
        const Field twice = spectral::frac_laplacian(spectral::frac_laplacian(u, s1), s2);
        CHECK(l2_difference(once, twice) <= 1e-10 * spectral::l2_norm(once));
    }
}

TEST_CASE("apply_Dg: unit g reduction, constants, symmetry, positivity") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    std::mt19937_64 rng(31);
    const double s = 1.2;

    const Field ones = Field::constant(grid, 1.0);
    const Field u = random_band_limited(grid, 10, rng);

    const Field via_dg = spectral::apply_Dg(u, ones, s);
    const Field direct = spectral::frac_laplacian(u, s);
    CHECK(l2_difference(via_dg, direct) <= 1e-10 * spectral::l2_norm(direct));

    Field g = random_band_limited(grid, 6, rng);
    for (double& v : g.samples) v = 1.5 + 0.5 * std::tanh(v); // strictly positive
    const Field const_in = Field::constant(grid, 3.25);
    const Field dg_const = spectral::apply_Dg(const_in, g, s);
    for (double v : dg_const.samples) CHECK(std::fabs(v) <= 1e-12);

    for (int trial = 0; trial < 100; ++trial) {
        const Field a = random_band_limited(grid, 10, rng);
        const Field b = random_band_limited(grid, 10, rng);
        const double lhs = spectral::inner_product(spectral::apply_Dg(a, g, s), b);
        const double rhs = spectral::inner_product(a, spectral::apply_Dg(b, g, s));
        CHECK(std::fabs(lhs - rhs) <=
              1e-10 * spectral::l2_norm(a) * spectral::l2_norm(b));

        const double quad = spectral::inner_product(spectral::apply_Dg(a, g, s), a);
        const double na = spectral::l2_norm(a);
        CHECK(quad >= -1e-12 * na * na);
    }

    Field bad_g = Field::constant(grid, 1.0);
    bad_g.samples[5] = 0.0;
    CHECK_THROWS_AS(spectral::apply_Dg(u, bad_g, s), PositivityViolation);
}

TEST_CASE("lp_norm: constants, sup norm, Hoelder, and rejection of p < 1") {
    const Grid grid = make_grid(1, 128, 2.0);
    const double volume = grid.box_volume();
    const Field c = Field::constant(grid, -2.5);

    CHECK(spectral::lp_norm(c, 2.0) == doctest::Approx(2.5 * std::sqrt(volume)));
    CHECK(spectral::lp_norm(c, 1.0) == doctest::Approx(2.5 * volume));
    CHECK(spectral::lp_norm(c, kInf) == doctest::Approx(2.5));
    CHECK_THROWS_AS(spectral::lp_norm(c, 0.5), Error);

    std::mt19937_64 rng(41);
    for (auto [p, q] : {std::pair{4.0, 4.0}, std::pair{3.0, 6.0}, std::pair{2.5, 10.0}}) {
        // 1/2 = 1/p + 1/q
        REQUIRE(std::fabs(1.0 / p + 1.0 / q - 0.5) < 1e-12);
        const Field u = random_band_limited(grid, 8, rng);
        const Field v = random_band_limited(grid, 8, rng);
        Field uv = Field::zeros(grid);
        for (std::size_t i = 0; i < uv.size(); ++i)
            uv.samples[i] = u.samples[i] * v.samples[i];
        CHECK(spectral::lp_norm(uv, 2.0) <=
              spectral::lp_norm(u, p) * spectral::lp_norm(v, q) * (1.0 + 1e-12));
    }
}

TEST_CASE("hs_norm: constants, the sqrt(2) equivalence, and sin(2x) at s = 1/2") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const Field c = Field::constant(grid, 1.75);
    const auto nc = spectral::hs_norm(c, 0.9);
    const double expected = 1.75 * std::sqrt(grid.box_volume());
    CHECK(nc.fourier_form == doctest::Approx(expected).epsilon(1e-12));
    CHECK(nc.sum_form == doctest::Approx(expected).epsilon(1e-12));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Field u = random_band_limited(grid, 10, rng, /*zero_mean=*/false);
        const auto n = spectral::hs_norm(u, 0.75);
        CHECK(n.fourier_form <= n.sum_form * (1.0 + 1e-12));
        CHECK(n.sum_form <= std::sqrt(2.0) * n.fourier_form * (1.0 + 1e-12));
    }

    // single-mode Parseval: ||sin(2x)||_{H^0.5}, L = 2pi -> sqrt((1+2) pi)
    const Field u2 = sine_mode(grid, 2);
    const auto n2 = spectral::hs_norm(u2, 0.5);
    CHECK(n2.fourier_form == doctest::Approx(std::sqrt(3.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("wsp_norm: constants, p = 2 coincidence, eigenfunction factorization") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const Field c = Field::constant(grid, 4.0);
    const double p = 3.0;
    CHECK(spectral::wsp_norm(c, 0.8, p) ==
          doctest::Approx(4.0 * std::pow(grid.box_volume(), 1.0 / p)).epsilon(1e-12));

    std::mt19937_64 rng(61);
    const Field u = random_band_limited(grid, 10, rng);
    const double s = 0.65;
    CHECK(spectral::wsp_norm(u, s, 2.0) ==
          doctest::Approx(spectral::hs_norm(u, s).sum_form).epsilon(1e-12));

    const int k = 3;
    const Field uk = sine_mode(grid, k);
    const double factored = spectral::lp_norm(uk, p) * (1.0 + std::pow(k, s));
    CHECK(spectral::wsp_norm(uk, s, p) == doctest::Approx(factored).epsilon(1e-10));
}

TEST_CASE("composite norms: zero, constant, and the 3 sqrt(pi) single mode") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const Field zero = Field::zeros(grid);
    const auto n0 = spectral::composite_norms(zero, zero, 1.0);
    CHECK(n0.norm1 == 0.0);
    CHECK(n0.norm2 == 0.0);
    CHECK(n0.norm3 == 0.0);

    const Field c = Field::constant(grid, 2.0);
    const auto nc = spectral::composite_norms(c, zero, 0.7);
    const double cv = 2.0 * std::sqrt(grid.box_volume());
    CHECK(nc.norm1 == doctest::Approx(cv).epsilon(1e-12));
    CHECK(nc.norm2 == doctest::Approx(cv).epsilon(1e-12));
    CHECK(nc.norm3 == doctest::Approx(cv).epsilon(1e-12));

    // u = u_t = sin(x), s = 1: ||sin|| = sqrt(pi), half-laplacian is identity
    // on mode 1, so norm1 = 3 sqrt(pi) and norm3 = 4 sqrt(pi).
    const Field sx = sine_mode(grid, 1);
    const auto ns = spectral::composite_norms(sx, sx, 1.0);
    CHECK(ns.norm1 == doctest::Approx(3.0 * std::sqrt(kPi)).epsilon(1e-12));
    CHECK(ns.norm3 == doctest::Approx(4.0 * std::sqrt(kPi)).epsilon(1e-12));
    CHECK(ns.norm2 == doctest::Approx(5.0 * std::sqrt(kPi)).epsilon(1e-12));

    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Field u = random_band_limited(grid, 10, rng);
        const Field ut = random_band_limited(grid, 10, rng);
        const auto n = spectral::composite_norms(u, ut, 0.85);
        CHECK(n.norm1 <= n.norm3 * (1.0 + 1e-12));
        CHECK(n.norm3 <= (n.norm1 + n.norm2) * (1.0 + 1e-12));
    }
}

TEST_CASE("inner product: L2 identity, orthogonality, Parseval vs naive DFT") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    std::mt19937_64 rng(83);
    const Field u = random_band_limited(grid, 10, rng);
    const Field v = random_band_limited(grid, 10, rng);

    const double uu = spectral::inner_product(u, u);
    const double l2 = spectral::l2_norm(u);
    CHECK(uu == doctest::Approx(l2 * l2).epsilon(1e-12));

    const Field sx = sine_mode(grid, 1);
    const Field cx = sine_mode(grid, 1, 1.0, kPi / 2.0);
    CHECK(std::fabs(spectral::inner_product(sx, cx)) <= 1e-12);

    // spectral-space evaluation via the naive DFT oracle
    const auto su = naive_dft_1d(u);
    const auto sv = naive_dft_1d(v);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < su.size(); ++j) acc += su[j] * std::conj(sv[j]);
    const double parseval = acc.real() / grid.box_length;
    CHECK(rel_err(spectral::inner_product(u, v), parseval) <= 1e-12);

    const Grid other = make_grid(1, 32, 2.0 * kPi);
    CHECK_THROWS_AS(spectral::inner_product(u, Field::zeros(other)), GridMismatch);
}
