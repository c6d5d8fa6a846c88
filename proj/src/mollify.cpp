#include "fracwave/mollify.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/fft.hpp"
#include "fracwave/kernels.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave::mollify {

namespace {

// Unscaled kernel profiles on the unit scale; mass is fixed numerically
// after sampling, so only the shape matters here.
double bump_profile(double r2) {
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

double gaussian_profile(double r2) { return std::exp(-0.5 * r2); }

double profile(Kernel kernel, double r2) {
    return kernel == Kernel::compact_bump ? bump_profile(r2) : gaussian_profile(r2);
}

// Samples eps^-d * psi((x - center)/eps) with periodic min-image distances,
// then renormalizes the discrete mass to exactly `target_mass`.
Field sampled_kernel(const MollifierSpec& spec, const Grid& grid,
                     const std::array<double, 2>& center, double target_mass) {
    const double eps = spec.epsilon;
    const double inv_scale = std::pow(eps, -grid.dim);
    Field out = Field::zeros(grid);
    const int n = grid.points_per_axis;

    if (grid.dim == 1) {
        for (int j = 0; j < n; ++j) {
            const double y = grid.min_image(grid.coordinate(j), center[0]) / eps;
            out.samples[j] = inv_scale * profile(spec.kernel, y * y);
        }
    } else {
        for (int j0 = 0; j0 < n; ++j0) {
            const double y0 = grid.min_image(grid.coordinate(j0), center[0]) / eps;
            for (int j1 = 0; j1 < n; ++j1) {
                const double y1 = grid.min_image(grid.coordinate(j1), center[1]) / eps;
                out.samples[static_cast<std::size_t>(j0) * n + j1] =
                    inv_scale * profile(spec.kernel, y0 * y0 + y1 * y1);
            }
        }
    }

    const double discrete_mass = spectral::mass(out);
    if (!(discrete_mass > 0.0))
        throw UnresolvableKernel("mollify: sampled kernel has zero mass");
    kernels::scale(out.samples, target_mass / discrete_mass);
    return out;
}

std::array<double, 2> snap_to_grid(const Grid& grid, const std::array<double, 2>& center) {
    std::array<double, 2> snapped{0.0, 0.0};
    const double dx = grid.spacing();
    for (int a = 0; a < grid.dim; ++a) {
        double c = std::round(center[a] / dx) * dx;
        c -= grid.box_length * std::floor(c / grid.box_length);
        snapped[a] = c;
    }
    return snapped;
}

// d/dx1 via the Fourier multiplier i*k1 (exact for resolved kernels). Junk
// bins below the spectral floor are zeroed before the multiplier grows them.
Field spectral_dx1(const Field& u) {
    auto spec = fft::forward(u);
    fft::denoise(spec, u.grid);
    const Grid& g = u.grid;
    const int n = g.points_per_axis;
    if (g.dim == 1) {
        for (int j = 0; j < n; ++j)
            spec[j] *= std::complex<double>(0.0, g.wavenumber(j));
        // Nyquist derivative bin is purely imaginary-producing; zero it so the
        // result stays real (the odd multiplier has no even symmetry there).
        spec[n / 2] = 0.0;
    } else {
        for (int j0 = 0; j0 < n; ++j0) {
            const std::complex<double> ik0(0.0, g.wavenumber(j0));
            for (int j1 = 0; j1 < n; ++j1)
                spec[static_cast<std::size_t>(j0) * n + j1] *= ik0;
        }
        for (int j1 = 0; j1 < n; ++j1)
            spec[static_cast<std::size_t>(n / 2) * n + j1] = 0.0;
    }
    return fft::inverse(spec, g);
}

} // namespace

void validate(const MollifierSpec& spec, const Grid& grid) {
    if (!(spec.epsilon > 0.0) || spec.epsilon > 1.0)
        throw UnresolvableKernel("mollify: epsilon must lie in (0, 1], got " +
                                 std::to_string(spec.epsilon));
    const double floor = kMinEpsilonCells * grid.spacing();
    if (spec.epsilon < floor)
        throw UnresolvableKernel("mollify: epsilon " + std::to_string(spec.epsilon) +
                                 " below resolvable floor 4*dx = " + std::to_string(floor));
}

Field kernel_eval(const MollifierSpec& spec, const Grid& grid) {
    validate(spec, grid);
    return sampled_kernel(spec, grid, {0.0, 0.0}, 1.0);
}

Field regularize(const Field& datum, const MollifierSpec& spec) {
    validate(spec, datum.grid);
    datum.require_finite("regularize");
    const Field kernel = kernel_eval(spec, datum.grid);

    auto spec_f = fft::forward(datum);
    const auto spec_k = fft::forward(kernel);
    for (std::size_t i = 0; i < spec_f.size(); ++i) spec_f[i] *= spec_k[i];
    return fft::inverse(spec_f, datum.grid);
}

Field singular_net(const SingularDatum& datum, const MollifierSpec& spec,
                   const Grid& grid) {
    validate(spec, grid);
    // Centers snap to the nearest node so delta * psi_eps = psi_eps holds
    // exactly on the grid.
    const auto center = snap_to_grid(grid, datum.center);

    switch (datum.kind) {
    case SingularKind::delta:
        return sampled_kernel(spec, grid, center, datum.amplitude);
    case SingularKind::delta_prime: {
        Field net = sampled_kernel(spec, grid, center, 1.0);
        net = spectral_dx1(net);
        kernels::scale(net.samples, datum.amplitude);
        return net;
    }
    case SingularKind::delta_squared: {
        Field net = sampled_kernel(spec, grid, center, 1.0);
        kernels::multiply(net.samples, net.samples, net.samples);
        kernels::scale(net.samples, datum.amplitude);
        return net;
    }
    case SingularKind::heaviside: {
        // Half-box indicator rising through the center, smoothed by psi_eps.
        Field step = Field::zeros(grid);
        const int n = grid.points_per_axis;
        const double half = grid.box_length / 2.0;
        for (std::size_t i = 0; i < step.size(); ++i) {
            const int j0 = grid.dim == 2 ? static_cast<int>(i) / n : static_cast<int>(i);
            double offset = grid.coordinate(j0) - center[0];
            offset -= grid.box_length * std::floor(offset / grid.box_length);
            step.samples[i] = offset < half ? datum.amplitude : 0.0;
        }
        return regularize(step, spec);
    }
    case SingularKind::smooth_reference: {
        // eps-independent smooth baseline: periodized Gaussian, sigma = L/10.
        const double sigma = grid.box_length / 10.0;
        Field out = Field::zeros(grid);
        const int n = grid.points_per_axis;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const int j0 = grid.dim == 2 ? static_cast<int>(i) / n : static_cast<int>(i);
            const int j1 = grid.dim == 2 ? static_cast<int>(i) % n : 0;
            const double y0 = grid.min_image(grid.coordinate(j0), center[0]);
            double r2 = y0 * y0;
            if (grid.dim == 2) {
                const double y1 = grid.min_image(grid.coordinate(j1), center[1]);
                r2 += y1 * y1;
            }
            out.samples[i] = datum.amplitude * std::exp(-0.5 * r2 / (sigma * sigma));
        }
        return out;
    }
    }
    throw Error("singular_net: unknown datum kind");
}

SlopeFit moderateness_exponent(const std::vector<std::pair<double, double>>& eps_norms) {
    if (eps_norms.size() < 4)
        throw Error("moderateness_exponent: need at least 4 ladder points");
    for (std::size_t i = 0; i < eps_norms.size(); ++i) {
        if (!(eps_norms[i].second > 0.0))
            throw Error("moderateness_exponent: norms must be positive (entry " +
                        std::to_string(i) + ")");
        if (i > 0 && !(eps_norms[i].first < eps_norms[i - 1].first))
            throw Error("moderateness_exponent: epsilons must be strictly decreasing");
    }

    const double n = static_cast<double>(eps_norms.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [eps, norm] : eps_norms) {
        const double x = std::log(eps);
        const double y = std::log(norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    SlopeFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (const auto& [eps, norm] : eps_norms) {
        const double r = std::log(norm) - (fit.intercept + fit.slope * std::log(eps));
        ss_res += r * r;
    }
    // A perfectly flat ladder fits its own mean exactly.
    fit.r_squared = ss_tot <= 1e-24 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

} // namespace fracwave::mollify
