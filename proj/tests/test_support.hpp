#pragma once

// Shared test oracles. Everything in here is deliberately independent of the
// library's transform path: the naive DFT is an O(n^2) direct sum, the
// quadratures are plain Simpson rules, and the modal references are closed
// forms of the damped oscillator.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "fracwave/grid.hpp"

namespace test_support {

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Naive DFT with the library's continuous-FT normalization:
//   u_hat(k_j) = sum_i u[i] exp(-i k_j x_i) dx
// Direct summation; no FFT anywhere.

inline std::vector<std::complex<double>> naive_dft_1d(const fracwave::Field& u) {
    const int n = u.grid.points_per_axis;
    const double dx = u.grid.spacing();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double k = u.grid.wavenumber(j);
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const double x = u.grid.coordinate(i);
            acc += u.samples[static_cast<std::size_t>(i)] *
                   std::exp(std::complex<double>(0.0, -k * x));
        }
        out[static_cast<std::size_t>(j)] = acc * dx;
    }
    return out;
}

inline fracwave::Field naive_idft_1d(const std::vector<std::complex<double>>& spec,
                                     const fracwave::Grid& grid) {
    const int n = grid.points_per_axis;
    fracwave::Field out = fracwave::Field::zeros(grid);
    for (int i = 0; i < n; ++i) {
        const double x = grid.coordinate(i);
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const double k = grid.wavenumber(j);
            acc += spec[static_cast<std::size_t>(j)] *
                   std::exp(std::complex<double>(0.0, k * x));
        }
        out.samples[static_cast<std::size_t>(i)] = (acc / grid.box_length).real();
    }
    return out;
}

// Exact spectral first derivative by direct summation (Nyquist zeroed).
inline fracwave::Field naive_derivative_1d(const fracwave::Field& u) {
    auto spec = naive_dft_1d(u);
    const int n = u.grid.points_per_axis;
    for (int j = 0; j < n; ++j)
        spec[static_cast<std::size_t>(j)] *=
            std::complex<double>(0.0, u.grid.wavenumber(j));
    spec[static_cast<std::size_t>(n / 2)] = 0.0;
    return naive_idft_1d(spec, u.grid);
}

// ---------------------------------------------------------------------------
// Simpson quadrature for the continuum mollifier-norm oracles.

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Friedrichs bump exp(-1/(1-x^2)) on (-1,1), un-normalized.
inline double bump_raw(double x) {
    const double r2 = x * x;
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

// \int bump_raw over (-1,1); normalization constant for the unit-mass bump.
inline double bump_mass() {
    return simpson([](double x) { return bump_raw(x); }, -1.0, 1.0, 20000);
}

// L^p norm of the unit-mass 1d bump psi (continuum).
inline double bump_lp_norm(double p) {
    const double c = 1.0 / bump_mass();
    const double integral = simpson(
        [&](double x) { return std::pow(c * bump_raw(x), p); }, -1.0, 1.0, 20000);
    return std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Closed-form modal references. Each Fourier mode of the constant-coefficient
// problem is an independent oscillator  a'' + beta a' + omega0^2 a = F(t).

struct ModalState {
    double value;
    double velocity;
};

// Free damped oscillator (underdamped), a(0) = A, a'(0) = B.
inline ModalState damped_oscillator(double A, double B, double beta, double omega0,
                                    double t) {
    const double nu2 = omega0 * omega0 - 0.25 * beta * beta;
    const double nu = std::sqrt(nu2); // caller keeps beta < 2 omega0
    const double c2 = (B + 0.5 * beta * A) / nu;
    const double decay = std::exp(-0.5 * beta * t);
    const double c = std::cos(nu * t), s = std::sin(nu * t);
    ModalState out;
    out.value = decay * (A * c + c2 * s);
    out.velocity = decay * ((-0.5 * beta * A + c2 * nu) * c +
                            (-0.5 * beta * c2 - A * nu) * s);
    return out;
}

// Constant forcing F from rest: a(t) = F (1 - cos(omega0 t)) / omega0^2.
inline double forced_rest_response(double F, double omega0, double t) {
    return F * (1.0 - std::cos(omega0 * t)) / (omega0 * omega0);
}

// ---------------------------------------------------------------------------
// Band-limited random fields built by direct trigonometric summation, so the
// construction shares nothing with the library's FFT or RNG.

inline fracwave::Field random_band_limited(const fracwave::Grid& grid, int max_mode,
                                           std::mt19937_64& rng,
                                           bool zero_mean = true) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    fracwave::Field out = fracwave::Field::zeros(grid);
    const double k0 = 2.0 * kPi / grid.box_length;
    const int n = grid.points_per_axis;

    if (!zero_mean) {
        const double dc = normal(rng);
        for (double& v : out.samples) v += dc;
    }
    if (grid.dim == 1) {
        for (int m = 1; m <= max_mode; ++m) {
            const double a = normal(rng) / (1.0 + m);
            const double phi = angle(rng);
            for (int i = 0; i < n; ++i)
                out.samples[static_cast<std::size_t>(i)] +=
                    a * std::cos(m * k0 * grid.coordinate(i) + phi);
        }
    } else {
        for (int m0 = -max_mode; m0 <= max_mode; ++m0) {
            for (int m1 = 1; m1 <= max_mode; ++m1) { // half-space, DC excluded
                const double a = normal(rng) / (1.0 + std::abs(m0) + m1);
                const double phi = angle(rng);
                for (int i0 = 0; i0 < n; ++i0)
                    for (int i1 = 0; i1 < n; ++i1)
                        out.samples[static_cast<std::size_t>(i0) * n + i1] +=
                            a * std::cos(m0 * k0 * grid.coordinate(i0) +
                                         m1 * k0 * grid.coordinate(i1) + phi);
            }
        }
        for (int m0 = 1; m0 <= max_mode; ++m0) {
            const double a = normal(rng) / (1.0 + m0);
            const double phi = angle(rng);
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1)
                    out.samples[static_cast<std::size_t>(i0) * n + i1] +=
                        a * std::cos(m0 * k0 * grid.coordinate(i0) + phi);
        }
    }
    return out;
}

inline fracwave::Field sine_mode(const fracwave::Grid& grid, int mode,
                                 double amplitude = 1.0, double phase = 0.0) {
    fracwave::Field out = fracwave::Field::zeros(grid);
    const double k0 = 2.0 * kPi / grid.box_length;
    for (int i = 0; i < grid.points_per_axis; ++i)
        out.samples[static_cast<std::size_t>(i)] =
            amplitude * std::sin(mode * k0 * grid.coordinate(i) + phase);
    return out;
}

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

inline double l2_difference(const fracwave::Field& a, const fracwave::Field& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.samples[i] - b.samples[i];
        acc += d * d;
    }
    return std::sqrt(acc * a.grid.cell_volume());
}

} // namespace test_support
