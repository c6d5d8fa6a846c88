#pragma once

#include <memory>

#include "fracwave/fft.hpp"
#include "fracwave/grid.hpp"

// Fractional operators and the norms used by the energy estimates.
//
//   frac_laplacian(u, s)    (-Delta)^s u, Fourier multiplier |k|^(2s)
//   apply_Dg(u, g, s)       (-Delta)^(s/2) ( g (-Delta)^(s/2) u )
//
// Note the operator-order convention: frac_laplacian takes the exponent of
// the symbol halved, i.e. the paper's (-Delta)^(s/2) is frac_laplacian(u, s/2).

namespace fracwave::spectral {

struct FracOrder {
    double s = 1.0;
    // True iff d > 2s, the regime where the fractional Sobolev inequality
    // (and the L^{d/s}-based estimates) apply.
    bool high_dimension_regime(int dim) const { return dim > 2.0 * s; }
};

// |k|^(2*order) lookup for every FFT bin; cached per (grid, order).
using SymbolTable = std::shared_ptr<const std::vector<double>>;
SymbolTable symbol_table(const Grid& grid, double order);

Field frac_laplacian(const Field& u, double s);
Field apply_Dg(const Field& u, const Field& g, double s);

double lp_norm(const Field& u, double p);
double l2_norm(const Field& u);
double inner_product(const Field& u, const Field& v);
double mass(const Field& u); // integral of u over the box

struct HsNorm {
    double fourier_form = 0.0; // ( sum (1+|k|^{2s}) |u_hat|^2 / L^d )^(1/2)
    double sum_form = 0.0;     // ||u||_{L2} + ||(-Delta)^{s/2} u||_{L2}
};
HsNorm hs_norm(const Field& u, double s);

// ||u||_{L^p} + ||(-Delta)^{s/2} u||_{L^p}
double wsp_norm(const Field& u, double s, double p);

struct CompositeNorms {
    double norm1 = 0.0;
    double norm2 = 0.0;
    double norm3 = 0.0;
    // constituents, all L2
    double u = 0.0;
    double half_lap_u = 0.0;
    double full_lap_u = 0.0;
    double ut = 0.0;
    double half_lap_ut = 0.0;
};
CompositeNorms composite_norms(const Field& u, const Field& ut, double s);

} // namespace fracwave::spectral
