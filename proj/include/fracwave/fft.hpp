#pragma once

#include <complex>
#include <vector>

#include "fracwave/grid.hpp"

// Periodic transforms normalized like the continuous Fourier transform:
//
//   forward:  u_hat(k) = sum_j u[j] exp(-i k.x_j) dx^d
//   inverse:  u[j]     = (1/L^d) sum_k u_hat(k) exp(+i k.x_j)
//
// so that Parseval reads ||u||_{L2}^2 = (1/L^d) sum_k |u_hat(k)|^2 and unit
// mass kernels have u_hat(0) = 1. Spectra are stored full-size in FFT bin
// order (row-major for d = 2). Fields are real; the inverse enforces
// Hermitian symmetry by discarding an imaginary residue below 1e-12 of the
// field scale and raising NonFiniteField above it.

namespace fracwave::fft {

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const Field& u);
Field inverse(const Spectrum& spec, const Grid& grid);

// Spectral weight for Parseval sums: 1 / L^d.
double parseval_weight(const Grid& grid);

constexpr double kImagResidueTolerance = 1e-12;

// Zeroes bins whose conjugate pair sits below rel_floor * peak. Growing
// symbols such as |k|^(2s) would otherwise amplify roundoff junk in empty
// bins past the accuracy of the operator; zeroing whole conjugate pairs
// keeps the spectrum exactly Hermitian. The default floor is ~300x above
// the junk a forward transform leaves in empty bins.
constexpr double kSpectralFloor = 0x1.0p-45;
void denoise(Spectrum& spec, const Grid& grid, double rel_floor = kSpectralFloor);

} // namespace fracwave::fft
