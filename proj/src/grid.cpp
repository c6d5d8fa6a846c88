#include "fracwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fracwave {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

double Grid::wavenumber(int bin) const {
    return 2.0 * std::numbers::pi * signed_mode(bin) / box_length;
}

double Grid::min_image(double a, double b) const {
    double d = a - b;
    d -= box_length * std::round(d / box_length);
    return d;
}

Grid make_grid(int dim, int n, double box_length) {
    if (dim != 1 && dim != 2)
        throw Error("make_grid: dim must be 1 or 2, got " + std::to_string(dim));
    if (n < 8 || !power_of_two(n))
        throw Error("make_grid: n must be a power of two >= 8, got " + std::to_string(n));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw Error("make_grid: box_length must be positive and finite");
    return Grid{dim, n, box_length};
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b))
        throw GridMismatch(std::string(where) + ": fields live on different grids");
}

Field::Field(const Grid& g, std::vector<double> values) : grid(g), samples(std::move(values)) {
    if (samples.size() != grid.point_count())
        throw Error("Field: sample count " + std::to_string(samples.size()) +
                    " does not match grid size " + std::to_string(grid.point_count()));
}

Field Field::zeros(const Grid& g) {
    return Field(g, std::vector<double>(g.point_count(), 0.0));
}

Field Field::constant(const Grid& g, double value) {
    return Field(g, std::vector<double>(g.point_count(), value));
}

double Field::min_value() const {
    return *std::min_element(samples.begin(), samples.end());
}

double Field::max_value() const {
    return *std::max_element(samples.begin(), samples.end());
}

bool Field::finite() const {
    for (double v : samples)
        if (!std::isfinite(v)) return false;
    return true;
}

void Field::require_finite(const char* where) const {
    if (!finite())
        throw NonFiniteField(std::string(where) + ": field contains NaN or Inf");
}

} // namespace fracwave
