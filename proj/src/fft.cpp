#include "fracwave/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace fracwave::fft {

namespace {

// FFTW planning is not thread-safe; executing a plan on fresh buffers via
// fftw_execute_dft is. Plans are created once per (dim, n, direction) with
// FFTW_UNALIGNED so they accept any heap buffer, and cached forever.
class PlanCache {
public:
    fftw_plan get(int dim, int n, int sign) {
        const Key key{dim, n, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        const std::size_t count =
            dim == 2 ? static_cast<std::size_t>(n) * n : static_cast<std::size_t>(n);
        fftw_complex* in = fftw_alloc_complex(count);
        fftw_complex* out = fftw_alloc_complex(count);
        fftw_plan plan =
            dim == 2 ? fftw_plan_dft_2d(n, n, in, out, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED)
                     : fftw_plan_dft_1d(n, in, out, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

fftw_complex* as_fftw(std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(p);
}

} // namespace

double parseval_weight(const Grid& grid) { return 1.0 / grid.box_volume(); }

namespace {

// A c2c transform of real samples is Hermitian only up to rounding; the
// asymmetric residue would be amplified by growing symbols downstream, so
// conjugate pairs are averaged into exact symmetry here.
void symmetrize(Spectrum& spec, const Grid& grid) {
    const int n = grid.points_per_axis;
    auto pair_up = [&](std::size_t a, std::size_t b) {
        if (a == b) {
            spec[a] = spec[a].real();
            return;
        }
        const std::complex<double> avg =
            0.5 * (spec[a] + std::conj(spec[b]));
        spec[a] = avg;
        spec[b] = std::conj(avg);
    };
    if (grid.dim == 1) {
        for (int j = 0; j <= n / 2; ++j)
            pair_up(static_cast<std::size_t>(j),
                    static_cast<std::size_t>((n - j) % n));
    } else {
        for (int j0 = 0; j0 < n; ++j0) {
            const int p0 = (n - j0) % n;
            for (int j1 = 0; j1 < n; ++j1) {
                const int p1 = (n - j1) % n;
                const std::size_t a = static_cast<std::size_t>(j0) * n + j1;
                const std::size_t b = static_cast<std::size_t>(p0) * n + p1;
                if (a <= b) pair_up(a, b);
            }
        }
    }
}

} // namespace

Spectrum forward(const Field& u) {
    const Grid& g = u.grid;
    const std::size_t count = g.point_count();
    Spectrum in(count), out(count);
    for (std::size_t i = 0; i < count; ++i) in[i] = u.samples[i];

    fftw_plan plan = cache().get(g.dim, g.points_per_axis, FFTW_FORWARD);
    fftw_execute_dft(plan, as_fftw(in.data()), as_fftw(out.data()));

    const double weight = g.cell_volume();
    for (auto& c : out) c *= weight;
    symmetrize(out, g);
    return out;
}

void denoise(Spectrum& spec, const Grid& grid, double rel_floor) {
    double peak = 0.0;
    for (const auto& c : spec)
        peak = std::max(peak, std::max(std::fabs(c.real()), std::fabs(c.imag())));
    const double floor = rel_floor * peak;
    auto below = [&](std::size_t i) {
        return std::fabs(spec[i].real()) <= floor && std::fabs(spec[i].imag()) <= floor;
    };
    const int n = grid.points_per_axis;
    if (grid.dim == 1) {
        for (int j = 0; j < n; ++j) {
            const std::size_t a = static_cast<std::size_t>(j);
            const std::size_t b = static_cast<std::size_t>((n - j) % n);
            if (below(a) && below(b)) spec[a] = 0.0;
        }
    } else {
        for (int j0 = 0; j0 < n; ++j0) {
            for (int j1 = 0; j1 < n; ++j1) {
                const std::size_t a = static_cast<std::size_t>(j0) * n + j1;
                const std::size_t b =
                    static_cast<std::size_t>((n - j0) % n) * n + (n - j1) % n;
                if (below(a) && below(b)) spec[a] = 0.0;
            }
        }
    }
}

Field inverse(const Spectrum& spec, const Grid& grid) {
    const std::size_t count = grid.point_count();
    if (spec.size() != count)
        throw Error("fft::inverse: spectrum size does not match grid");

    Spectrum in(spec), out(count);
    fftw_plan plan = cache().get(grid.dim, grid.points_per_axis, FFTW_BACKWARD);
    fftw_execute_dft(plan, as_fftw(in.data()), as_fftw(out.data()));

    const double weight = parseval_weight(grid);
    Field result = Field::zeros(grid);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double re = out[i].real() * weight;
        const double im = out[i].imag() * weight;
        result.samples[i] = re;
        max_re = std::max(max_re, std::fabs(re));
        max_im = std::max(max_im, std::fabs(im));
    }
    // Hermitian symmetry check: imaginary residue must be roundoff-sized.
    const double scale = std::max(1.0, max_re);
    if (!(max_im <= kImagResidueTolerance * scale))
        throw NonFiniteField("fft::inverse: imaginary residue " +
                             std::to_string(max_im) + " exceeds tolerance");
    result.require_finite("fft::inverse");
    return result;
}

} // namespace fracwave::fft
