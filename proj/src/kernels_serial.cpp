#include <cmath>

#include "fracwave/kernels.hpp"

// Plain-loop reference implementations. These define the semantics the
// OpenMP kernels are tested against.

namespace fracwave::kernels::serial {

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void add_scaled(std::span<const double> x, double a, std::span<const double> y,
                std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
}

void scale(std::span<double> x, double a) {
    for (double& v : x) v *= a;
}

void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
}

void apply_multiplier(std::span<std::complex<double>> spec,
                      std::span<const double> mult) {
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mult[i];
}

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double sum_abs_pow(std::span<const double> x, double p) {
    double acc = 0.0;
    for (double v : x) acc += std::pow(std::fabs(v), p);
    return acc;
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double weighted_square_sum(std::span<const double> w, std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i] * x[i];
    return acc;
}

} // namespace fracwave::kernels::serial
