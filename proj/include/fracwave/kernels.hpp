#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel primitives shared by the spectral operators, the time
// stepper and the norm machinery. Every kernel has an OpenMP version (the
// default entry points) and a plain-loop reference in kernels::serial used
// by the agreement tests and the benchmark tool.
//
// Reductions are computed as fixed-size chunk partials combined in chunk
// order, so their results are bit-identical no matter how many threads run
// the chunk loop. That property is what makes sweep reports reproducible
// across --threads settings.

namespace fracwave::kernels {

// Global worker count for OpenMP regions (1 disables parallel execution).
void set_threads(int n);
int threads();

constexpr std::size_t kReductionChunk = 4096;

// y[i] = a * x[i] + y[i]
void axpy(double a, std::span<const double> x, std::span<double> y);
// out[i] = x[i] + a * y[i]
void add_scaled(std::span<const double> x, double a, std::span<const double> y,
                std::span<double> out);
// x[i] *= a
void scale(std::span<double> x, double a);
// out[i] = x[i] * y[i]
void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out);
// spec[i] *= mult[i] (real Fourier multiplier on a complex spectrum)
void apply_multiplier(std::span<std::complex<double>> spec,
                      std::span<const double> mult);

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
// sum of |x[i]|^p
double sum_abs_pow(std::span<const double> x, double p);
double max_abs(std::span<const double> x);
// sum of w[i] * x[i]^2   (weighted L2, e.g. g^(1/2)-weighted energy terms)
double weighted_square_sum(std::span<const double> w, std::span<const double> x);

namespace serial {

void axpy(double a, std::span<const double> x, std::span<double> y);
void add_scaled(std::span<const double> x, double a, std::span<const double> y,
                std::span<double> out);
void scale(std::span<double> x, double a);
void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out);
void apply_multiplier(std::span<std::complex<double>> spec,
                      std::span<const double> mult);
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum_abs_pow(std::span<const double> x, double p);
double max_abs(std::span<const double> x);
double weighted_square_sum(std::span<const double> w, std::span<const double> x);

} // namespace serial

} // namespace fracwave::kernels
