#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fracwave/evolve.hpp"
#include "fracwave/grid.hpp"

// Field and report persistence. Field files are CSV (one sample per line,
// row-major) or flat little-endian binary, always with a JSON sidecar
// `<path>.json` carrying {dim, n, L}. All numbers are written with 17
// significant digits and '.' decimal so equal runs produce byte-identical
// bodies.

namespace fracwave::io {

std::string format_double(double v);

void write_field_csv(const std::filesystem::path& path, const Field& field);
Field read_field_csv(const std::filesystem::path& path);

void write_field_binary(const std::filesystem::path& path, const Field& field);
Field read_field_binary(const std::filesystem::path& path);

// Reads CSV or binary according to the sidecar's "format" entry.
Field read_field(const std::filesystem::path& path);

// One row per snapshot: t, ||u||_{L2}, ||(-Delta)^{s/2}u||_{L2}, ||u_t||_{L2},
// E, dissipation_residual (empty for forced runs / the last row).
void write_trajectory_csv(const std::filesystem::path& path,
                          const std::vector<evolve::StateSnapshot>& trajectory,
                          const evolve::EnergyReport& report,
                          const evolve::ProblemSpec& problem);

// Atomic text write: temp file in the same directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& body);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
    // Serializes and writes atomically.
    void write(const std::filesystem::path& path) const;
    std::string body() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace fracwave::io
