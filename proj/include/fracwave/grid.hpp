#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

// Uniform periodic grid on the torus [0,L)^d, d in {1,2}, n points per axis
// (power of two). Wavenumbers follow FFT storage order: bin j maps to the
// signed mode j < n/2 ? j : j - n, i.e. k_j = 2*pi*(signed j)/L.
struct Grid {
    int dim = 1;
    int points_per_axis = 8;
    double box_length = 1.0;

    double spacing() const { return box_length / points_per_axis; }
    std::size_t point_count() const {
        std::size_t c = static_cast<std::size_t>(points_per_axis);
        return dim == 2 ? c * c : c;
    }
    double cell_volume() const {
        const double dx = spacing();
        return dim == 2 ? dx * dx : dx;
    }
    double box_volume() const {
        return dim == 2 ? box_length * box_length : box_length;
    }

    int signed_mode(int bin) const {
        return bin < points_per_axis / 2 ? bin : bin - points_per_axis;
    }
    double wavenumber(int bin) const;

    // Coordinate of a sample along one axis.
    double coordinate(int bin) const { return spacing() * bin; }

    // Shortest signed periodic displacement from b to a.
    double min_image(double a, double b) const;

    bool operator==(const Grid& other) const {
        return dim == other.dim && points_per_axis == other.points_per_axis &&
               box_length == other.box_length;
    }
};

Grid make_grid(int dim, int n, double box_length);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

// Real scalar field sampled on a grid, row-major for d = 2.
struct Field {
    Grid grid;
    std::vector<double> samples;

    Field() = default;
    Field(const Grid& g, std::vector<double> values);

    static Field zeros(const Grid& g);
    static Field constant(const Grid& g, double value);

    double& operator[](std::size_t i) { return samples[i]; }
    double operator[](std::size_t i) const { return samples[i]; }
    std::size_t size() const { return samples.size(); }

    double min_value() const;
    double max_value() const;
    bool finite() const;
    void require_finite(const char* where) const;
};

} // namespace fracwave
