#include "fracwave/random_fields.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fracwave/fft.hpp"

namespace fracwave::random_fields {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t key) {
    return static_cast<double>(mix(key) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t key) {
    const double u1 = std::max(uniform01(key), 0x1.0p-60);
    const double u2 = uniform01(key ^ 0xa5a5a5a5a5a5a5a5ULL);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::uint64_t mode_key(std::uint64_t seed, std::uint64_t sample_index, int m0,
                       int m1, std::uint64_t salt) {
    std::uint64_t k = mix(seed ^ 0x6d656b6579ULL);
    k = mix(k ^ sample_index);
    k = mix(k ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(m0)) << 32 |
                 static_cast<std::uint32_t>(m1)));
    return mix(k ^ salt);
}

// Place a/2 e^{i phase} at mode m and the conjugate at -m; with the
// continuous-FT normalization the bin value carries a factor L^d.
void place_mode(fft::Spectrum& spec, const Grid& grid, int m0, int m1,
                double amplitude, double phase) {
    const int n = grid.points_per_axis;
    auto bin = [&](int m) { return m >= 0 ? m : m + n; };
    const std::complex<double> c =
        0.5 * amplitude * grid.box_volume() *
        std::exp(std::complex<double>(0.0, phase));
    if (grid.dim == 1) {
        spec[static_cast<std::size_t>(bin(m0))] += c;
        spec[static_cast<std::size_t>(bin(-m0))] += std::conj(c);
    } else {
        spec[static_cast<std::size_t>(bin(m0)) * n + bin(m1)] += c;
        spec[static_cast<std::size_t>(bin(-m0)) * n + bin(-m1)] += std::conj(c);
    }
}

} // namespace

Field sample(const Grid& grid, const BandSpec& band, std::uint64_t seed,
             std::uint64_t sample_index) {
    const int cap = grid.points_per_axis / 2 - 1;
    const int band_max = std::min(band.max_mode, cap);
    fft::Spectrum spec(grid.point_count(), {0.0, 0.0});

    auto draw = [&](int m0, int m1) {
        const double r2 = static_cast<double>(m0) * m0 + static_cast<double>(m1) * m1;
        const double decay = std::pow(1.0 + r2, -0.5 * band.decay);
        const double amp = band.amplitude * decay *
                           gaussian(mode_key(seed, sample_index, m0, m1, 0x11));
        const double phase = 2.0 * std::numbers::pi *
                             uniform01(mode_key(seed, sample_index, m0, m1, 0x22));
        place_mode(spec, grid, m0, m1, amp, phase);
    };

    // Half-space of modes (DC excluded); the conjugate half is implied.
    if (grid.dim == 1) {
        for (int m = 1; m <= band_max; ++m) draw(m, 0);
    } else {
        for (int m1 = 1; m1 <= band_max; ++m1) draw(0, m1);
        for (int m0 = 1; m0 <= band_max; ++m0)
            for (int m1 = -band_max; m1 <= band_max; ++m1) draw(m0, m1);
    }
    return fft::inverse(spec, grid);
}

Field sample_nonnegative(const Grid& grid, const BandSpec& band,
                         std::uint64_t seed, std::uint64_t sample_index) {
    Field f = sample(grid, band, seed, sample_index);
    const double lo = f.min_value();
    for (double& v : f.samples) v -= lo;
    return f;
}

} // namespace fracwave::random_fields
