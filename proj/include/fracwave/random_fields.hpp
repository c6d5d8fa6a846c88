#pragma once

#include <cstdint>

#include "fracwave/grid.hpp"

// Seeded band-limited random fields. Spectral coefficients are drawn per
// integer mode from a counter-based generator keyed on (seed, sample, mode),
// so the same (seed, sample) names the same continuum field at every grid
// resolution; refining the grid only adds modes the decay law has already
// made small. All samples are zero-mean (DC bin skipped).

namespace fracwave::random_fields {

// splitmix64 step; the whole generator is built from it.
std::uint64_t mix(std::uint64_t x);
// Uniform double in [0, 1).
double uniform01(std::uint64_t key);
// Standard normal from two independent keys.
double gaussian(std::uint64_t key);

struct BandSpec {
    int max_mode = 8;       // |m_i| <= max_mode per axis
    double decay = 1.5;     // coefficient magnitude ~ (1+|m|^2)^(-decay/2)
    double amplitude = 1.0; // overall scale
};

Field sample(const Grid& grid, const BandSpec& band, std::uint64_t seed,
             std::uint64_t sample_index);

// Same construction shifted and scaled to be >= 0 with min exactly 0, for
// the non-negative coefficient slots (m, b).
Field sample_nonnegative(const Grid& grid, const BandSpec& band,
                         std::uint64_t seed, std::uint64_t sample_index);

} // namespace fracwave::random_fields
