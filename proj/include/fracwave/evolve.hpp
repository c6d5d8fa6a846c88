#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fracwave/grid.hpp"
#include "fracwave/spectral.hpp"

// Time integration of
//
//   u_tt + D_g^s u + m(x) u + b(x) u_t = f(t,x),  u(0) = u0, u_t(0) = u1
//
// as a first-order system with classical explicit RK4, plus the energy
// diagnostics: E(t) = ||u_t||^2 + ||g^(1/2) (-Delta)^(s/2) u||^2 + ||m^(1/2) u||^2,
// conserved for b = 0, f = 0 and dissipated at rate 2 ||b^(1/2) u_t||^2
// otherwise.

namespace fracwave::evolve {

struct TimeProfile {
    enum class Kind { constant, sine, cosine };
    Kind kind = Kind::constant;
    double amplitude = 1.0;
    double omega = 0.0;
    double phase = 0.0;

    double operator()(double t) const;
};

class SourceTerm {
public:
    enum class Kind { zero, separable, sampled };

    SourceTerm() = default;
    static SourceTerm zero();
    static SourceTerm separable(TimeProfile profile, Field spatial);
    // Strictly increasing t_k covering [0, T]; linear interpolation between
    // samples at RK substage times.
    static SourceTerm sampled(std::vector<std::pair<double, Field>> samples);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    const Field& spatial_factor() const { return spatial_; }
    const TimeProfile& profile() const { return profile_; }
    const std::vector<std::pair<double, Field>>& samples() const { return samples_; }

    // out += f(t, .)
    void accumulate(double t, std::vector<double>& out) const;
    // sup over a time sample set of ||f(t,.)||_{L2}; used by the estimate RHS.
    double sup_l2(const Grid& grid, double horizon) const;
    void validate(const Grid& grid, double horizon) const;

private:
    Kind kind_ = Kind::zero;
    TimeProfile profile_{};
    Field spatial_{};
    std::vector<std::pair<double, Field>> samples_{};
};

enum class CoefficientProvenance { smooth, regularized };

struct ProblemSpec {
    spectral::FracOrder order{};
    double horizon = 1.0;
    Field g, m, b;
    SourceTerm forcing;
    Field u0, u1;
    CoefficientProvenance provenance = CoefficientProvenance::smooth;

    const Grid& grid() const { return g.grid; }
    void validate() const;
};

struct SolverConfig {
    double cfl_fraction = 0.5;
    std::optional<double> dt_override;
    int snapshot_stride = 1;
};

struct StateSnapshot {
    double t = 0.0;
    Field u;
    Field ut;
};

struct EnergyReport {
    std::vector<double> times;
    std::vector<double> energy;
    // r_k = (E_{k+1} - E_k)/dt + 2 * midpoint dissipation rate, the defect in
    // dE/dt = -2 ||b^(1/2) u_t||^2; size = times.size() - 1. Empty when
    // forcing is present.
    std::vector<double> dissipation_residual;
    // Largest positive energy jump over a recorded step (b >= 0, f = 0 runs).
    double monotone_violation = 0.0;
};

// Largest stable step 2.8 / omega_max for RK4 on the modal frequencies
// omega_k = sqrt(g_max |k|^(2s) + m_max), with |k| at the grid's corner mode.
double stable_dt(const Grid& grid, double s, double g_max, double m_max);

struct TimeGridPlan {
    double dt = 0.0;
    int n_steps = 0;
    int snapshot_stride = 1;
};
// Shared between solve and the Duhamel superposition so tau nodes align.
TimeGridPlan plan_time_grid(const ProblemSpec& p, const SolverConfig& cfg);

std::pair<Field, Field> rhs(const StateSnapshot& state, const ProblemSpec& p);

struct SolveResult {
    std::vector<StateSnapshot> trajectory;
    EnergyReport report;
};

constexpr double kBlowUpFactor = 1e12;

SolveResult solve(const ProblemSpec& p, const SolverConfig& cfg);
// Integrates with an externally fixed time grid (the Duhamel superposition
// reuses the outer solver's dt for every auxiliary problem).
SolveResult solve(const ProblemSpec& p, const TimeGridPlan& plan);

double energy(const StateSnapshot& state, const ProblemSpec& p);

std::vector<double> dissipation_residual(const std::vector<StateSnapshot>& trajectory,
                                         const ProblemSpec& p);

} // namespace fracwave::evolve
