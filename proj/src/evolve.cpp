#include "fracwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/kernels.hpp"

namespace fracwave::evolve {

namespace {

// sup over [0,T] of |amplitude * trig(omega t + phase)|, computed from the
// phase interval directly.
double sup_abs_trig(double amplitude, double omega, double phase, double horizon,
                    bool is_sine) {
    const double a = std::fabs(amplitude);
    if (omega == 0.0)
        return a * std::fabs(is_sine ? std::sin(phase) : std::cos(phase));
    double lo = phase;
    double hi = phase + omega * horizon;
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo >= std::numbers::pi) return a; // a peak is always inside
    auto val = [&](double x) { return std::fabs(is_sine ? std::sin(x) : std::cos(x)); };
    double best = std::max(val(lo), val(hi));
    // |sin| peaks at pi/2 + k*pi, |cos| at k*pi.
    const double first_peak = is_sine ? std::numbers::pi / 2.0 : 0.0;
    const double k = std::ceil((lo - first_peak) / std::numbers::pi);
    const double peak = first_peak + k * std::numbers::pi;
    if (peak <= hi) best = 1.0;
    return a * best;
}

} // namespace

double TimeProfile::operator()(double t) const {
    switch (kind) {
    case Kind::constant: return amplitude;
    case Kind::sine: return amplitude * std::sin(omega * t + phase);
    case Kind::cosine: return amplitude * std::cos(omega * t + phase);
    }
    return 0.0;
}

SourceTerm SourceTerm::zero() { return SourceTerm{}; }

SourceTerm SourceTerm::separable(TimeProfile profile, Field spatial) {
    SourceTerm f;
    f.kind_ = Kind::separable;
    f.profile_ = profile;
    f.spatial_ = std::move(spatial);
    return f;
}

SourceTerm SourceTerm::sampled(std::vector<std::pair<double, Field>> samples) {
    SourceTerm f;
    f.kind_ = Kind::sampled;
    f.samples_ = std::move(samples);
    return f;
}

void SourceTerm::accumulate(double t, std::vector<double>& out) const {
    switch (kind_) {
    case Kind::zero:
        return;
    case Kind::separable:
        kernels::axpy(profile_(t), spatial_.samples, out);
        return;
    case Kind::sampled: {
        // Clamped linear interpolation between the bracketing samples.
        if (t <= samples_.front().first) {
            kernels::axpy(1.0, samples_.front().second.samples, out);
            return;
        }
        if (t >= samples_.back().first) {
            kernels::axpy(1.0, samples_.back().second.samples, out);
            return;
        }
        auto hi = std::upper_bound(
            samples_.begin(), samples_.end(), t,
            [](double value, const auto& s) { return value < s.first; });
        auto lo = hi - 1;
        const double span = hi->first - lo->first;
        const double w = (t - lo->first) / span;
        kernels::axpy(1.0 - w, lo->second.samples, out);
        kernels::axpy(w, hi->second.samples, out);
        return;
    }
    }
}

double SourceTerm::sup_l2(const Grid& grid, double horizon) const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::separable: {
        const double norm = std::sqrt(
            kernels::dot(spatial_.samples, spatial_.samples) * grid.cell_volume());
        double sup_profile = 0.0;
        switch (profile_.kind) {
        case TimeProfile::Kind::constant:
            sup_profile = std::fabs(profile_.amplitude);
            break;
        case TimeProfile::Kind::sine:
            sup_profile = sup_abs_trig(profile_.amplitude, profile_.omega,
                                       profile_.phase, horizon, true);
            break;
        case TimeProfile::Kind::cosine:
            sup_profile = sup_abs_trig(profile_.amplitude, profile_.omega,
                                       profile_.phase, horizon, false);
            break;
        }
        return sup_profile * norm;
    }
    case Kind::sampled: {
        // Linear interpolation attains its sup at the nodes.
        double sup = 0.0;
        for (const auto& [t, field] : samples_) {
            (void)t;
            sup = std::max(sup, std::sqrt(kernels::dot(field.samples, field.samples) *
                                          grid.cell_volume()));
        }
        return sup;
    }
    }
    return 0.0;
}

void SourceTerm::validate(const Grid& grid, double horizon) const {
    if (kind_ == Kind::separable) {
        require_same_grid(spatial_.grid, grid, "SourceTerm");
        spatial_.require_finite("SourceTerm");
    } else if (kind_ == Kind::sampled) {
        if (samples_.size() < 2)
            throw Error("SourceTerm: sampled representation needs >= 2 samples");
        if (samples_.front().first > 1e-12 ||
            samples_.back().first < horizon - 1e-12)
            throw Error("SourceTerm: sampled times must cover [0, T]");
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            require_same_grid(samples_[i].second.grid, grid, "SourceTerm");
            samples_[i].second.require_finite("SourceTerm");
            if (i > 0 && !(samples_[i].first > samples_[i - 1].first))
                throw Error("SourceTerm: sampled times must be strictly increasing");
        }
    }
}

void ProblemSpec::validate() const {
    if (!(order.s > 0.0)) throw Error("ProblemSpec: order s must be positive");
    if (!(horizon > 0.0)) throw Error("ProblemSpec: horizon must be positive");
    require_same_grid(g.grid, m.grid, "ProblemSpec");
    require_same_grid(g.grid, b.grid, "ProblemSpec");
    require_same_grid(g.grid, u0.grid, "ProblemSpec");
    require_same_grid(g.grid, u1.grid, "ProblemSpec");
    g.require_finite("ProblemSpec.g");
    m.require_finite("ProblemSpec.m");
    b.require_finite("ProblemSpec.b");
    u0.require_finite("ProblemSpec.u0");
    u1.require_finite("ProblemSpec.u1");
    if (!(g.min_value() > 0.0))
        throw PositivityViolation("ProblemSpec: min(g) = " +
                                  std::to_string(g.min_value()) + " must be > 0");
    if (m.min_value() < 0.0)
        throw PositivityViolation("ProblemSpec: m must be non-negative");
    if (b.min_value() < 0.0)
        throw PositivityViolation("ProblemSpec: b must be non-negative");
    forcing.validate(g.grid, horizon);
}

double stable_dt(const Grid& grid, double s, double g_max, double m_max) {
    if (!(g_max > 0.0)) throw Error("stable_dt: g_max must be positive");
    if (m_max < 0.0) throw Error("stable_dt: m_max must be non-negative");
    // Corner mode of the grid: per-axis Nyquist |k| = pi*n/L.
    const double axis_max = std::numbers::pi * grid.points_per_axis / grid.box_length;
    const double k2_max = axis_max * axis_max * grid.dim;
    const double omega_max = std::sqrt(g_max * std::pow(k2_max, s) + m_max);
    return 2.8 / omega_max;
}

TimeGridPlan plan_time_grid(const ProblemSpec& p, const SolverConfig& cfg) {
    if (!(cfg.cfl_fraction > 0.0) || cfg.cfl_fraction > 1.0)
        throw Error("SolverConfig: cfl_fraction must lie in (0, 1]");
    if (cfg.snapshot_stride < 1)
        throw Error("SolverConfig: snapshot_stride must be >= 1");

    const double limit = cfg.cfl_fraction *
                         stable_dt(p.grid(), p.order.s, p.g.max_value(),
                                   std::max(p.m.max_value(), 0.0));
    double dt = limit;
    if (cfg.dt_override) {
        if (!(*cfg.dt_override > 0.0))
            throw Error("SolverConfig: dt_override must be positive");
        if (*cfg.dt_override > limit * (1.0 + 1e-12))
            throw Error("SolverConfig: dt_override " + std::to_string(*cfg.dt_override) +
                        " violates dt <= cfl_fraction * dt_stability = " +
                        std::to_string(limit));
        dt = *cfg.dt_override;
    }

    TimeGridPlan plan;
    plan.n_steps = std::max(1, static_cast<int>(std::ceil(p.horizon / dt - 1e-9)));
    plan.dt = p.horizon / plan.n_steps;
    plan.snapshot_stride = cfg.snapshot_stride;
    return plan;
}

namespace {

// dut = f(t) - D_g u - m u - b ut, evaluated without Field temporaries in the
// hot path. half_table is |k|^s (the symbol of (-Delta)^(s/2)).
class WaveOperator {
public:
    explicit WaveOperator(const ProblemSpec& p)
        : p_(p), half_table_(spectral::symbol_table(p.grid(), p.order.s / 2.0)) {}

    void operator()(double t, const Field& u, const Field& ut, Field& du,
                    Field& dut) const {
        du.samples = ut.samples;

        // D_g^s u = (-Delta)^(s/2) ( g . (-Delta)^(s/2) u )
        auto spec = fft::forward(u);
        fft::denoise(spec, p_.grid());
        kernels::apply_multiplier(spec, *half_table_);
        Field inner = fft::inverse(spec, p_.grid());
        kernels::multiply(p_.g.samples, inner.samples, inner.samples);
        spec = fft::forward(inner);
        fft::denoise(spec, p_.grid());
        kernels::apply_multiplier(spec, *half_table_);
        Field dg_u = fft::inverse(spec, p_.grid());

        auto& out = dut.samples;
        const auto& mu = p_.m.samples;
        const auto& bu = p_.b.samples;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = -dg_u.samples[i] - mu[i] * u.samples[i] - bu[i] * ut.samples[i];
        p_.forcing.accumulate(t, out);
    }

private:
    const ProblemSpec& p_;
    spectral::SymbolTable half_table_;
};

double dissipation_rate(const Field& b, const Field& ut) {
    return kernels::weighted_square_sum(b.samples, ut.samples) *
           b.grid.cell_volume();
}

} // namespace

std::pair<Field, Field> rhs(const StateSnapshot& state, const ProblemSpec& p) {
    require_same_grid(state.u.grid, p.grid(), "rhs");
    require_same_grid(state.ut.grid, p.grid(), "rhs");
    if (!(p.g.min_value() > 0.0))
        throw PositivityViolation("rhs: min(g) must be > 0");
    Field du = Field::zeros(p.grid());
    Field dut = Field::zeros(p.grid());
    WaveOperator op(p);
    op(state.t, state.u, state.ut, du, dut);
    return {std::move(du), std::move(dut)};
}

double energy(const StateSnapshot& state, const ProblemSpec& p) {
    require_same_grid(state.u.grid, p.grid(), "energy");
    const double vol = p.grid().cell_volume();
    const Field half_u = spectral::frac_laplacian(state.u, p.order.s / 2.0);
    const double kinetic = kernels::dot(state.ut.samples, state.ut.samples) * vol;
    const double elastic = kernels::weighted_square_sum(p.g.samples, half_u.samples) * vol;
    const double potential = kernels::weighted_square_sum(p.m.samples, state.u.samples) * vol;
    return kinetic + elastic + potential;
}

SolveResult solve(const ProblemSpec& p, const SolverConfig& cfg) {
    p.validate();
    return solve(p, plan_time_grid(p, cfg));
}

SolveResult solve(const ProblemSpec& p, const TimeGridPlan& plan) {
    p.validate();
    const Grid& grid = p.grid();
    const std::size_t count = grid.point_count();
    const double dt = plan.dt;

    WaveOperator op(p);

    Field u = p.u0;
    Field ut = p.u1;
    Field k1u = Field::zeros(grid), k1v = Field::zeros(grid);
    Field k2u = Field::zeros(grid), k2v = Field::zeros(grid);
    Field k3u = Field::zeros(grid), k3v = Field::zeros(grid);
    Field k4u = Field::zeros(grid), k4v = Field::zeros(grid);
    Field yu = Field::zeros(grid), yv = Field::zeros(grid);

    // Blow-up guard. Zero initial data falls back to unit scale so forced
    // runs from rest are not rejected.
    const auto initial = spectral::composite_norms(u, ut, p.order.s);
    const double guard_base = initial.norm1 > 0.0 ? initial.norm1 : 1.0;
    const double guard = kBlowUpFactor * guard_base;

    std::vector<StateSnapshot> trajectory;
    trajectory.reserve(static_cast<std::size_t>(plan.n_steps / plan.snapshot_stride) + 2);
    trajectory.push_back({0.0, u, ut});

    for (int step = 0; step < plan.n_steps; ++step) {
        const double t = step * dt;

        op(t, u, ut, k1u, k1v);
        kernels::add_scaled(u.samples, 0.5 * dt, k1u.samples, yu.samples);
        kernels::add_scaled(ut.samples, 0.5 * dt, k1v.samples, yv.samples);
        op(t + 0.5 * dt, yu, yv, k2u, k2v);
        kernels::add_scaled(u.samples, 0.5 * dt, k2u.samples, yu.samples);
        kernels::add_scaled(ut.samples, 0.5 * dt, k2v.samples, yv.samples);
        op(t + 0.5 * dt, yu, yv, k3u, k3v);
        kernels::add_scaled(u.samples, dt, k3u.samples, yu.samples);
        kernels::add_scaled(ut.samples, dt, k3v.samples, yv.samples);
        op(t + dt, yu, yv, k4u, k4v);

        const double w = dt / 6.0;
        for (std::size_t i = 0; i < count; ++i) {
            u.samples[i] += w * (k1u.samples[i] + 2.0 * k2u.samples[i] +
                                 2.0 * k3u.samples[i] + k4u.samples[i]);
            ut.samples[i] += w * (k1v.samples[i] + 2.0 * k2v.samples[i] +
                                  2.0 * k3v.samples[i] + k4v.samples[i]);
        }

        const bool last = step + 1 == plan.n_steps;
        if ((step + 1) % plan.snapshot_stride == 0 || last) {
            const double t_next = last ? p.horizon : (step + 1) * dt;
            const double size = std::sqrt(kernels::dot(u.samples, u.samples) * grid.cell_volume()) +
                                std::sqrt(kernels::dot(ut.samples, ut.samples) * grid.cell_volume());
            if (!(size <= guard))
                throw StabilityBreach(
                    "solve: solution norm " + std::to_string(size) + " at t = " +
                    std::to_string(t_next) + " exceeds 1e12 x initial norm");
            trajectory.push_back({t_next, u, ut});
        }
    }

    SolveResult result;
    result.report.times.reserve(trajectory.size());
    result.report.energy.reserve(trajectory.size());
    for (const auto& snap : trajectory) {
        result.report.times.push_back(snap.t);
        result.report.energy.push_back(energy(snap, p));
    }
    if (p.forcing.is_zero()) {
        result.report.dissipation_residual = dissipation_residual(trajectory, p);
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < result.report.energy.size(); ++k)
            worst = std::max(worst,
                             result.report.energy[k + 1] - result.report.energy[k]);
        result.report.monotone_violation = std::max(0.0, worst);
    }
    result.trajectory = std::move(trajectory);
    return result;
}

std::vector<double> dissipation_residual(const std::vector<StateSnapshot>& trajectory,
                                         const ProblemSpec& p) {
    if (!p.forcing.is_zero())
        throw ForcingPresent("dissipation_residual: requires f == 0");
    std::vector<double> residual;
    if (trajectory.size() < 2) return residual;
    residual.reserve(trajectory.size() - 1);

    // The quadratic energy E satisfies dE/dt = -2 ||b^(1/2) u_t||^2 (each of
    // the three E terms contributes a factor-2 chain rule), so the residual
    // adds twice the midpoint dissipation rate.
    double e_prev = energy(trajectory.front(), p);
    double d_prev = dissipation_rate(p.b, trajectory.front().ut);
    for (std::size_t k = 1; k < trajectory.size(); ++k) {
        const double e_next = energy(trajectory[k], p);
        const double d_next = dissipation_rate(p.b, trajectory[k].ut);
        const double dt = trajectory[k].t - trajectory[k - 1].t;
        residual.push_back((e_next - e_prev) / dt + (d_prev + d_next));
        e_prev = e_next;
        d_prev = d_next;
    }
    return residual;
}

} // namespace fracwave::evolve
