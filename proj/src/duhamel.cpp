#include "fracwave/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracwave/kernels.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave::duhamel {

namespace {

// Trapezoid weight of node tau_i inside the composite rule on [0, t], where
// the node set is {tau_0, ..., tau_I <= t} plus t itself (v(t; t) = 0, so
// the extra node carries no field evaluation).
double trapezoid_weight(const std::vector<double>& taus, std::size_t i, double t) {
    const double left = i == 0 ? 0.0 : taus[i - 1];
    const double right = i + 1 < taus.size() ? std::min(taus[i + 1], t) : t;
    return 0.5 * (right - left);
}

Field forcing_slice(const evolve::ProblemSpec& p, double tau) {
    Field f = Field::zeros(p.grid());
    p.forcing.accumulate(tau, f.samples);
    return f;
}

} // namespace

DuhamelDecomposition duhamel_solve(const evolve::ProblemSpec& p,
                                   const evolve::SolverConfig& cfg, int n_tau) {
    p.validate();
    if (n_tau < 2) throw Error("duhamel_solve: n_tau must be >= 2");

    const evolve::TimeGridPlan outer = evolve::plan_time_grid(p, cfg);
    if (outer.n_steps % n_tau != 0)
        throw Error("duhamel_solve: tau grid misaligned, n_tau = " +
                    std::to_string(n_tau) + " must divide n_steps = " +
                    std::to_string(outer.n_steps));
    const int tau_stride = outer.n_steps / n_tau;

    // Both w and the accumulation run on a stride-1 grid so every tau node
    // is a snapshot time; the requested stride is applied on return.
    evolve::TimeGridPlan dense = outer;
    dense.snapshot_stride = 1;

    evolve::ProblemSpec homogeneous = p;
    homogeneous.forcing = evolve::SourceTerm::zero();
    const evolve::SolveResult w = evolve::solve(homogeneous, dense);

    DuhamelDecomposition out;
    out.reconstructed = w.trajectory;

    std::vector<double> taus(static_cast<std::size_t>(n_tau));
    for (int i = 0; i < n_tau; ++i) taus[static_cast<std::size_t>(i)] = i * tau_stride * dense.dt;
    out.tau_nodes = taus;
    out.tau_nodes.push_back(p.horizon); // v(T; T) = 0, no solve needed

    if (!p.forcing.is_zero()) {
        for (int i = 0; i < n_tau; ++i) {
            const double tau = taus[static_cast<std::size_t>(i)];
            // v(.; tau): homogeneous problem launched at tau with data (0, f(tau)).
            evolve::ProblemSpec aux = homogeneous;
            aux.horizon = p.horizon - tau;
            aux.u0 = Field::zeros(p.grid());
            aux.u1 = forcing_slice(p, tau);

            evolve::TimeGridPlan aux_plan;
            aux_plan.dt = dense.dt; // same dt as the outer solver
            aux_plan.n_steps = outer.n_steps - i * tau_stride;
            aux_plan.snapshot_stride = 1;
            const evolve::SolveResult v = evolve::solve(aux, aux_plan);

            // v snapshot j sits at outer time tau + j*dt = step (i*tau_stride + j).
            for (std::size_t j = 0; j < v.trajectory.size(); ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * tau_stride + j;
                const double t = out.reconstructed[k].t;
                if (t <= tau) continue; // v(tau; tau) = 0 by construction
                const double weight = trapezoid_weight(taus, static_cast<std::size_t>(i), t);
                kernels::axpy(weight, v.trajectory[j].u.samples,
                              out.reconstructed[k].u.samples);
                kernels::axpy(weight, v.trajectory[j].ut.samples,
                              out.reconstructed[k].ut.samples);
            }
        }
    }

    // Subsample to the requested snapshot stride.
    auto strided = [&](const std::vector<evolve::StateSnapshot>& full) {
        std::vector<evolve::StateSnapshot> picked;
        for (std::size_t k = 0; k < full.size(); ++k) {
            const bool last = k + 1 == full.size();
            if (k % static_cast<std::size_t>(outer.snapshot_stride) == 0 || last)
                picked.push_back(full[k]);
        }
        return picked;
    };
    out.homogeneous = strided(w.trajectory);
    out.reconstructed = strided(out.reconstructed);
    return out;
}

double duhamel_discrepancy(const evolve::ProblemSpec& p,
                           const evolve::SolverConfig& cfg, int n_tau) {
    const DuhamelDecomposition decomposition = duhamel_solve(p, cfg, n_tau);
    const evolve::SolveResult direct = evolve::solve(p, cfg);
    if (direct.trajectory.size() != decomposition.reconstructed.size())
        throw Error("duhamel_discrepancy: snapshot grids differ");

    double scale = 0.0;
    for (const auto& snap : direct.trajectory)
        scale = std::max(scale, spectral::l2_norm(snap.u));
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    Field diff = Field::zeros(p.grid());
    for (std::size_t k = 0; k < direct.trajectory.size(); ++k) {
        const auto& a = decomposition.reconstructed[k].u;
        const auto& b = direct.trajectory[k].u;
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff.samples[i] = a.samples[i] - b.samples[i];
        worst = std::max(worst, spectral::l2_norm(diff) / scale);
    }
    return worst;
}

} // namespace fracwave::duhamel
