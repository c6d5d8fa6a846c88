#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fracwave/grid.hpp"

// Friedrichs mollifier nets psi_eps(x) = eps^-d psi(x/eps), eps in (0,1],
// sampled on the torus and renormalized to unit discrete mass, plus the
// catalog of singular data realized directly as eps-nets:
//
//   delta          -> amplitude * psi_eps(. - center)
//   delta_prime    -> amplitude * d/dx1 psi_eps(. - center)   (spectral derivative)
//   delta_squared  -> amplitude * psi_eps(. - center)^2       (not renormalized)
//   heaviside      -> amplitude * (half-box indicator through center) * psi_eps
//   smooth_reference -> amplitude * periodized Gaussian profile (sigma = L/10),
//                       the eps-independent smooth baseline datum
//
// Kernels below eps = 4*dx are rejected (UnresolvableKernel) instead of
// being silently aliased.

namespace fracwave::mollify {

enum class Kernel { compact_bump, gaussian };

struct MollifierSpec {
    Kernel kernel = Kernel::compact_bump;
    double epsilon = 0.25;
};

constexpr double kMinEpsilonCells = 4.0; // resolvability floor: eps >= 4*dx
constexpr double kMassTolerance = 1e-12;

void validate(const MollifierSpec& spec, const Grid& grid);

// psi_eps centered at the origin, unit discrete mass.
Field kernel_eval(const MollifierSpec& spec, const Grid& grid);

// Periodic convolution f * psi_eps via spectral multiplication.
Field regularize(const Field& datum, const MollifierSpec& spec);

enum class SingularKind { delta, delta_prime, delta_squared, heaviside, smooth_reference };

struct SingularDatum {
    SingularKind kind = SingularKind::delta;
    std::array<double, 2> center{0.0, 0.0}; // second entry ignored for d = 1
    double amplitude = 1.0;
};

Field singular_net(const SingularDatum& datum, const MollifierSpec& spec,
                   const Grid& grid);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

// Ordinary least squares on (log eps, log norm). Requires >= 4 points, a
// strictly decreasing ladder and positive norms. A net with norms ~ eps^-N
// fits slope -N.
SlopeFit moderateness_exponent(const std::vector<std::pair<double, double>>& eps_norms);

} // namespace fracwave::mollify
