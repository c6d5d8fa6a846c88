#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/evolve.hpp"
#include "fracwave/mollify.hpp"
#include "fracwave/vws_lab.hpp"

// Run configuration: a strict JSON document (unknown keys rejected, every
// violation reported with its field path) describing one experiment.

namespace fracwave::config {

enum class Experiment { solve, sweep, twin, coherence, duhamel_check, probes };

std::string to_string(Experiment e);

// A coefficient / data slot. Exactly one of the kinds below.
struct FieldSource {
    enum class Kind { constant, file, singular, harmonic };
    Kind kind = Kind::constant;
    double value = 0.0;                          // constant
    std::string path;                            // file (relative to config dir)
    mollify::SingularDatum datum{};              // singular
    std::optional<mollify::MollifierSpec> mollifier; // singular (required)
    double offset = 0.0;                         // singular: added to the net
    std::array<int, 2> mode{1, 0};               // harmonic
    double amplitude = 1.0;                      // harmonic
    double phase = 0.0;                          // harmonic
};

struct ForcingConfig {
    bool zero = true;
    evolve::TimeProfile profile{};
    std::optional<FieldSource> spatial;
};

struct GridConfig {
    int dim = 1;
    int n = 64;
    double box_length = 1.0;
};

struct ProblemConfig {
    double s = 1.0;
    double horizon = 1.0;
    FieldSource g, m, b, u0, u1;
    ForcingConfig forcing;
};

struct SolverBlock {
    double cfl_fraction = 0.5;
    std::optional<double> dt_override;
    int snapshot_stride = 1;
};

enum class ProbeKind { sobolev, kato_ponce, energy_bound };

struct ExperimentParams {
    // sweep / twin / coherence
    std::vector<double> ladder; // empty -> default ladder
    vws_lab::NormSelector norm_selector = vws_lab::NormSelector::norm1;
    mollify::Kernel kernel = mollify::Kernel::compact_bump;
    mollify::Kernel kernel_b = mollify::Kernel::gaussian;
    vws_lab::CoherenceReport::ReferenceKind reference =
        vws_lab::CoherenceReport::ReferenceKind::fine_eps_refined;
    // duhamel-check
    int n_tau = 0; // 0 -> n_steps
    // probes
    ProbeKind probe = ProbeKind::sobolev;
    int n_samples = 50;
    vws_lab::EnergyEstimate estimate = vws_lab::EnergyEstimate::e1;
    std::vector<int> resolutions; // probe grids; empty -> {n, 2n}
    // solve: also dump every snapshot's u as a binary field file
    bool dump_fields = false;
};

struct RunConfig {
    Experiment experiment = Experiment::solve;
    GridConfig grid;
    ProblemConfig problem;
    SolverBlock solver;
    ExperimentParams params;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "out";
    // Directory the config file lives in; file sources resolve against it.
    std::filesystem::path base_dir = ".";
};

// Parses and fully validates; throws ConfigError whose what() lists every
// field-path-qualified problem.
RunConfig parse_config(const std::string& bytes,
                       const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config up to key order; parse(serialize(c)) == c.
std::string serialize(const RunConfig& config);

Grid build_grid(const RunConfig& config);
Field build_field(const FieldSource& src, const Grid& grid,
                  const std::filesystem::path& base_dir);
// The solver-facing problem (singular slots realized at their configured eps).
evolve::ProblemSpec build_problem(const RunConfig& config);
// The sweep-facing template (singular slots kept symbolic, eps comes from the ladder).
vws_lab::ProblemTemplate build_template(const RunConfig& config);
evolve::SolverConfig build_solver(const RunConfig& config);

} // namespace fracwave::config
