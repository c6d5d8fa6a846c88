#include "fracwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "fracwave/kernels.hpp"

namespace fracwave::spectral {

namespace {

// Symbol tables |k|^(2*order) per FFT bin, cached and shared. DC is exactly 0
// for every positive order, so constants are in the kernel of the operator.
class SymbolCache {
public:
    SymbolTable get(const Grid& grid, double order) {
        const Key key{grid.dim, grid.points_per_axis, grid.box_length, order};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;

        auto table = std::make_shared<std::vector<double>>(grid.point_count());
        const int n = grid.points_per_axis;
        if (grid.dim == 1) {
            for (int j = 0; j < n; ++j) {
                const double k = grid.wavenumber(j);
                (*table)[j] = k == 0.0 ? 0.0 : std::pow(k * k, order);
            }
        } else {
            for (int j0 = 0; j0 < n; ++j0) {
                const double k0 = grid.wavenumber(j0);
                for (int j1 = 0; j1 < n; ++j1) {
                    const double k1 = grid.wavenumber(j1);
                    const double k2 = k0 * k0 + k1 * k1;
                    (*table)[static_cast<std::size_t>(j0) * n + j1] =
                        k2 == 0.0 ? 0.0 : std::pow(k2, order);
                }
            }
        }
        SymbolTable shared = table;
        tables_.emplace(key, shared);
        return shared;
    }

private:
    using Key = std::tuple<int, int, double, double>;
    std::mutex mutex_;
    std::map<Key, SymbolTable> tables_;
};

SymbolCache& symbol_cache() {
    static SymbolCache instance;
    return instance;
}

void require_order(double s, const char* where) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw Error(std::string(where) + ": operator order must be positive");
}

} // namespace

SymbolTable symbol_table(const Grid& grid, double order) {
    return symbol_cache().get(grid, order);
}

Field frac_laplacian(const Field& u, double s) {
    require_order(s, "frac_laplacian");
    u.require_finite("frac_laplacian");
    auto spec = fft::forward(u);
    fft::denoise(spec, u.grid);
    const auto table = symbol_table(u.grid, s);
    kernels::apply_multiplier(spec, *table);
    return fft::inverse(spec, u.grid);
}

Field apply_Dg(const Field& u, const Field& g, double s) {
    require_order(s, "apply_Dg");
    require_same_grid(u.grid, g.grid, "apply_Dg");
    if (!(g.min_value() > 0.0))
        throw PositivityViolation("apply_Dg: min(g) = " +
                                  std::to_string(g.min_value()) +
                                  ", coefficient must be strictly positive");
    Field inner = frac_laplacian(u, s / 2.0);
    kernels::multiply(g.samples, inner.samples, inner.samples);
    return frac_laplacian(inner, s / 2.0);
}

double lp_norm(const Field& u, double p) {
    if (std::isinf(p)) return kernels::max_abs(u.samples);
    if (!(p >= 1.0)) throw Error("lp_norm: p must be >= 1 or infinity");
    const double s = kernels::sum_abs_pow(u.samples, p) * u.grid.cell_volume();
    return std::pow(s, 1.0 / p);
}

double l2_norm(const Field& u) {
    return std::sqrt(kernels::dot(u.samples, u.samples) * u.grid.cell_volume());
}

double inner_product(const Field& u, const Field& v) {
    require_same_grid(u.grid, v.grid, "inner_product");
    return kernels::dot(u.samples, v.samples) * u.grid.cell_volume();
}

double mass(const Field& u) { return kernels::sum(u.samples) * u.grid.cell_volume(); }

HsNorm hs_norm(const Field& u, double s) {
    require_order(s, "hs_norm");
    const auto spec = fft::forward(u);
    const auto table = symbol_table(u.grid, s);
    const double weight = fft::parseval_weight(u.grid);

    double fourier_sq = 0.0;
    double half_sq = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double power = std::norm(spec[i]) * weight;
        fourier_sq += (1.0 + (*table)[i]) * power;
        half_sq += (*table)[i] * power;
    }
    HsNorm out;
    out.fourier_form = std::sqrt(fourier_sq);
    out.sum_form = l2_norm(u) + std::sqrt(half_sq);
    return out;
}

double wsp_norm(const Field& u, double s, double p) {
    require_order(s, "wsp_norm");
    return lp_norm(u, p) + lp_norm(frac_laplacian(u, s / 2.0), p);
}

CompositeNorms composite_norms(const Field& u, const Field& ut, double s) {
    require_order(s, "composite_norms");
    require_same_grid(u.grid, ut.grid, "composite_norms");

    CompositeNorms n;
    n.u = l2_norm(u);
    n.half_lap_u = l2_norm(frac_laplacian(u, s / 2.0));
    n.full_lap_u = l2_norm(frac_laplacian(u, s));
    n.ut = l2_norm(ut);
    n.half_lap_ut = l2_norm(frac_laplacian(ut, s / 2.0));

    n.norm1 = n.u + n.half_lap_u + n.ut;
    n.norm2 = n.norm1 + n.full_lap_u + n.half_lap_ut;
    n.norm3 = n.norm1 + n.half_lap_ut;
    return n;
}

} // namespace fracwave::spectral
