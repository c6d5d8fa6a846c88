#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracwave/duhamel.hpp"
#include "test_support.hpp"

using namespace fracwave;
using namespace test_support;

namespace {

evolve::ProblemSpec forced_benchmark(const Grid& grid, double s, double horizon) {
    evolve::ProblemSpec p;
    p.order.s = s;
    p.horizon = horizon;
    p.g = Field::constant(grid, 1.0);
    p.m = Field::constant(grid, 0.0);
    p.b = Field::constant(grid, 0.0);
    p.u0 = Field::zeros(grid);
    p.u1 = Field::zeros(grid);
    p.forcing = evolve::SourceTerm::separable(
        {evolve::TimeProfile::Kind::constant, 1.0, 0.0, 0.0}, sine_mode(grid, 2));
    return p;
}

// dt_override chosen so n_steps is a power of two (divisible tau grids).
evolve::SolverConfig pow2_steps_config(const evolve::ProblemSpec& p, int n_steps) {
    evolve::SolverConfig cfg;
    cfg.cfl_fraction = 0.5;
    const auto plan = evolve::plan_time_grid(p, cfg);
    REQUIRE(p.horizon / n_steps <= plan.dt * (1.0 + 1e-12));
    cfg.dt_override = p.horizon / n_steps;
    return cfg;
}

} // namespace

TEST_CASE("with f = 0 the superposition is exactly the homogeneous solution") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    evolve::ProblemSpec p = forced_benchmark(grid, 1.0, 2.0);
    p.forcing = evolve::SourceTerm::zero();
    p.u0 = sine_mode(grid, 1);

    const auto cfg = pow2_steps_config(p, 64);
    const auto decomposition = duhamel::duhamel_solve(p, cfg, 16);
    REQUIRE(decomposition.homogeneous.size() == decomposition.reconstructed.size());
    for (std::size_t k = 0; k < decomposition.homogeneous.size(); ++k)
        for (std::size_t i = 0; i < grid.point_count(); ++i)
            CHECK(decomposition.reconstructed[k].u.samples[i] ==
                  decomposition.homogeneous[k].u.samples[i]);
    CHECK(duhamel::duhamel_discrepancy(p, cfg, 16) <= 1e-14);
}

TEST_CASE("constant forcing from rest reproduces (1 - cos(w t)) / w^2") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const double s = 0.8;
    const evolve::ProblemSpec p = forced_benchmark(grid, s, 2.0);
    const auto cfg = pow2_steps_config(p, 256);

    const auto decomposition = duhamel::duhamel_solve(p, cfg, 256);
    const double omega = std::pow(2.0, s); // mode k = 2: omega = k^s
    const Field shape = sine_mode(grid, 2);

    double worst = 0.0;
    for (const auto& snap : decomposition.reconstructed) {
        Field expected = shape;
        const double a = forced_rest_response(1.0, omega, snap.t);
        for (double& v : expected.samples) v *= a;
        worst = std::max(worst, l2_difference(snap.u, expected));
    }
    CHECK(worst <= 1e-4 * std::sqrt(kPi));
}

TEST_CASE("superposition restores the initial conditions exactly") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    evolve::ProblemSpec p = forced_benchmark(grid, 1.2, 2.0);
    std::mt19937_64 rng(3);
    p.u0 = random_band_limited(grid, 6, rng);
    p.u1 = random_band_limited(grid, 6, rng);

    const auto cfg = pow2_steps_config(p, 128);
    const auto decomposition = duhamel::duhamel_solve(p, cfg, 32);
    CHECK(decomposition.reconstructed.front().t == 0.0);
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        CHECK(std::fabs(decomposition.reconstructed.front().u.samples[i] -
                        p.u0.samples[i]) <= 1e-12);
        CHECK(std::fabs(decomposition.reconstructed.front().ut.samples[i] -
                        p.u1.samples[i]) <= 1e-12);
    }
}

TEST_CASE("duhamel agrees with the direct solve on a smooth general problem") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    std::mt19937_64 rng(7);
    evolve::ProblemSpec p = forced_benchmark(grid, 0.9, 2.0);
    for (std::size_t i = 0; i < p.m.size(); ++i) {
        const double x = grid.coordinate(static_cast<int>(i));
        p.m.samples[i] = 0.4 * (1.0 + 0.5 * std::sin(x));
        p.b.samples[i] = 0.3 * (1.0 + 0.5 * std::cos(2.0 * x));
    }
    p.u0 = random_band_limited(grid, 5, rng);
    p.u1 = random_band_limited(grid, 5, rng);
    p.forcing = evolve::SourceTerm::separable(
        {evolve::TimeProfile::Kind::sine, 1.0, 2.3, 0.4}, random_band_limited(grid, 5, rng));

    const auto cfg = pow2_steps_config(p, 128);
    CHECK(duhamel::duhamel_discrepancy(p, cfg, 128) <= 1e-4);
}

TEST_CASE("doubling n_tau cuts the discrepancy about 4x (trapezoid order)") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    evolve::ProblemSpec p = forced_benchmark(grid, 0.8, 2.0);
    // time-varying profile so the tau integrand has curvature
    p.forcing = evolve::SourceTerm::separable(
        {evolve::TimeProfile::Kind::sine, 1.0, 2.0, 0.3}, sine_mode(grid, 2));
    const auto cfg = pow2_steps_config(p, 256);

    const double d16 = duhamel::duhamel_discrepancy(p, cfg, 16);
    const double d32 = duhamel::duhamel_discrepancy(p, cfg, 32);
    const double ratio = d16 / d32;
    CHECK(ratio >= 2.5);
    CHECK(ratio <= 6.0);
}

TEST_CASE("misaligned tau grids and degenerate n_tau are rejected") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const evolve::ProblemSpec p = forced_benchmark(grid, 1.0, 2.0);
    const auto cfg = pow2_steps_config(p, 128);
    CHECK_THROWS_AS(duhamel::duhamel_solve(p, cfg, 7), Error);
    CHECK_THROWS_AS(duhamel::duhamel_solve(p, cfg, 1), Error);
}

TEST_CASE("sampled forcing representation feeds the superposition too") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    evolve::ProblemSpec p = forced_benchmark(grid, 1.0, 2.0);

    // same constant-in-time forcing, expressed as samples
    std::vector<std::pair<double, Field>> samples;
    samples.emplace_back(0.0, sine_mode(grid, 2));
    samples.emplace_back(1.0, sine_mode(grid, 2));
    samples.emplace_back(2.0, sine_mode(grid, 2));
    p.forcing = evolve::SourceTerm::sampled(std::move(samples));

    // tau-quadrature error is set by the propagator's curvature, so the
    // constant profile converges at the same trapezoid rate as any other
    const auto cfg = pow2_steps_config(p, 128);
    CHECK(duhamel::duhamel_discrepancy(p, cfg, 128) <= 2e-4);
}

TEST_CASE("snapshot strides subsample the superposition consistently") {
    const Grid grid = make_grid(1, 64, 2.0 * kPi);
    const evolve::ProblemSpec p = forced_benchmark(grid, 1.0, 2.0);
    auto cfg = pow2_steps_config(p, 128);
    cfg.snapshot_stride = 4;

    const auto decomposition = duhamel::duhamel_solve(p, cfg, 32);
    const auto direct = evolve::solve(p, cfg);
    REQUIRE(decomposition.reconstructed.size() == direct.trajectory.size());
    for (std::size_t k = 0; k < direct.trajectory.size(); ++k)
        CHECK(decomposition.reconstructed[k].t == direct.trajectory[k].t);
    CHECK(duhamel::duhamel_discrepancy(p, cfg, 32) <= 2.5e-3);
}
