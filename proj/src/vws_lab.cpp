#include "fracwave/vws_lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "fracwave/kernels.hpp"

namespace fracwave::vws_lab {

double select_norm(const spectral::CompositeNorms& n, NormSelector sel) {
    switch (sel) {
    case NormSelector::norm1: return n.norm1;
    case NormSelector::norm2: return n.norm2;
    case NormSelector::norm3: return n.norm3;
    }
    return n.norm1;
}

SlotSpec SlotSpec::fixed(Field f) {
    SlotSpec s;
    s.kind = Kind::fixed;
    s.base = std::move(f);
    return s;
}

SlotSpec SlotSpec::smooth(Field f) {
    SlotSpec s;
    s.kind = Kind::regularized_smooth;
    s.base = std::move(f);
    return s;
}

SlotSpec SlotSpec::singular(mollify::SingularDatum d, double offset) {
    SlotSpec s;
    s.kind = Kind::singular;
    s.datum = d;
    s.offset = offset;
    return s;
}

bool ProblemTemplate::g_is_unit() const {
    return g.kind == SlotSpec::Kind::fixed && !g.base.samples.empty() &&
           g.base.min_value() == 1.0 && g.base.max_value() == 1.0;
}

namespace {

// Work items run inside OpenMP regions, which exceptions must not escape;
// failures are collected per index and the lowest-index one is rethrown so
// the surfaced error does not depend on scheduling.
void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

Field realize_slot(const SlotSpec& slot, const Grid& grid,
                   const mollify::MollifierSpec& spec) {
    switch (slot.kind) {
    case SlotSpec::Kind::fixed:
        return slot.base;
    case SlotSpec::Kind::regularized_smooth:
        return mollify::regularize(slot.base, spec);
    case SlotSpec::Kind::singular: {
        Field net = mollify::singular_net(*slot.datum, spec, grid);
        if (slot.offset != 0.0)
            for (double& v : net.samples) v += slot.offset;
        return net;
    }
    }
    throw Error("realize_slot: unknown slot kind");
}

bool has_singular_slot(const ProblemTemplate& tpl) {
    auto singular = [](const SlotSpec& s) {
        return s.kind == SlotSpec::Kind::singular;
    };
    return singular(tpl.g) || singular(tpl.m) || singular(tpl.b) ||
           singular(tpl.u0) || singular(tpl.u1) ||
           (!tpl.forcing.zero && singular(tpl.forcing.spatial));
}

// One time grid valid for a whole family of realizations: the CFL limit is
// monotone in max(g), max(m), and mollification by a non-negative unit-mass
// kernel cannot raise either maximum, so the plan built from the most
// restrictive member keeps every run stable and time-aligned.
evolve::TimeGridPlan family_plan(const std::vector<evolve::ProblemSpec>& members,
                                 const evolve::SolverConfig& cfg) {
    int n_steps = 0;
    const evolve::ProblemSpec* worst = nullptr;
    for (const auto& p : members) {
        const auto plan = evolve::plan_time_grid(p, cfg);
        if (plan.n_steps > n_steps) {
            n_steps = plan.n_steps;
            worst = &p;
        }
    }
    return evolve::plan_time_grid(*worst, cfg);
}

double sup_l2_difference(const std::vector<evolve::StateSnapshot>& a,
                         const std::vector<evolve::StateSnapshot>& b) {
    double worst = 0.0;
    Field diff = Field::zeros(a.front().u.grid);
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff.samples[i] = a[k].u.samples[i] - b[k].u.samples[i];
        worst = std::max(worst, spectral::l2_norm(diff));
    }
    return worst;
}

double sup_selected_norm(const std::vector<evolve::StateSnapshot>& trajectory,
                         double s, NormSelector sel) {
    double worst = 0.0;
    for (const auto& snap : trajectory)
        worst = std::max(worst,
                         select_norm(spectral::composite_norms(snap.u, snap.ut, s), sel));
    return worst;
}

} // namespace

evolve::ProblemSpec realize(const ProblemTemplate& tpl, double epsilon) {
    return realize(tpl, epsilon, tpl.kernel);
}

evolve::ProblemSpec realize(const ProblemTemplate& tpl, double epsilon,
                            mollify::Kernel kernel) {
    const mollify::MollifierSpec spec{kernel, epsilon};
    mollify::validate(spec, tpl.grid);

    evolve::ProblemSpec p;
    p.order.s = tpl.order.s;
    p.horizon = tpl.horizon;
    p.g = realize_slot(tpl.g, tpl.grid, spec);
    p.m = realize_slot(tpl.m, tpl.grid, spec);
    p.b = realize_slot(tpl.b, tpl.grid, spec);
    p.u0 = realize_slot(tpl.u0, tpl.grid, spec);
    p.u1 = realize_slot(tpl.u1, tpl.grid, spec);
    p.forcing = tpl.forcing.zero
                    ? evolve::SourceTerm::zero()
                    : evolve::SourceTerm::separable(
                          tpl.forcing.profile,
                          realize_slot(tpl.forcing.spatial, tpl.grid, spec));
    p.provenance = evolve::CoefficientProvenance::regularized;
    p.validate();
    return p;
}

evolve::ProblemSpec realize_unregularized(const ProblemTemplate& tpl) {
    if (has_singular_slot(tpl))
        throw Error("realize_unregularized: template has singular slots, no "
                    "eps -> 0 limit exists as a field");
    evolve::ProblemSpec p;
    p.order.s = tpl.order.s;
    p.horizon = tpl.horizon;
    p.g = tpl.g.base;
    p.m = tpl.m.base;
    p.b = tpl.b.base;
    p.u0 = tpl.u0.base;
    p.u1 = tpl.u1.base;
    p.forcing = tpl.forcing.zero
                    ? evolve::SourceTerm::zero()
                    : evolve::SourceTerm::separable(tpl.forcing.profile,
                                                    tpl.forcing.spatial.base);
    p.provenance = evolve::CoefficientProvenance::smooth;
    p.validate();
    return p;
}

std::vector<double> default_ladder(const Grid& grid) {
    const double floor = mollify::kMinEpsilonCells * grid.spacing();
    std::vector<double> ladder;
    for (int k = 2; k <= 6; ++k) {
        const double eps = std::pow(2.0, -k);
        if (eps >= floor) ladder.push_back(eps);
    }
    if (ladder.size() < 4)
        throw Error("default_ladder: grid too coarse for a 4-point ladder "
                    "(4*dx = " + std::to_string(floor) + ")");
    return ladder;
}

void validate_ladder(const std::vector<double>& ladder, const Grid& grid) {
    if (ladder.size() < 4)
        throw Error("ladder: need at least 4 entries, got " +
                    std::to_string(ladder.size()));
    const double floor = mollify::kMinEpsilonCells * grid.spacing();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const std::string tag = "ladder[" + std::to_string(i) + "]";
        if (!(ladder[i] > 0.0) || ladder[i] > 1.0)
            throw Error(tag + ": epsilon must lie in (0, 1]");
        if (ladder[i] < floor)
            throw UnresolvableKernel(tag + " = " + std::to_string(ladder[i]) +
                                     " below the resolvable floor 4*dx = " +
                                     std::to_string(floor));
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw Error(tag + ": ladder must be strictly decreasing");
    }
}

SweepReport moderateness_sweep(const ProblemTemplate& tpl,
                               const std::vector<double>& ladder,
                               NormSelector selector,
                               const evolve::SolverConfig& cfg) {
    validate_ladder(ladder, tpl.grid);

    std::vector<evolve::ProblemSpec> problems;
    problems.reserve(ladder.size());
    for (double eps : ladder) problems.push_back(realize(tpl, eps));
    const evolve::TimeGridPlan plan = family_plan(problems, cfg);

    std::vector<double> norms(ladder.size(), 0.0);
    const long long count = static_cast<long long>(ladder.size());
    std::vector<std::exception_ptr> errors(ladder.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::threads()) if (kernels::threads() > 1)
#endif
    for (long long i = 0; i < count; ++i) {
        try {
            const auto result =
                evolve::solve(problems[static_cast<std::size_t>(i)], plan);
            norms[static_cast<std::size_t>(i)] =
                sup_selected_norm(result.trajectory, tpl.order.s, selector);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    rethrow_first(errors);

    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < ladder.size(); ++i)
        points.emplace_back(ladder[i], norms[i]);
    const auto fit = mollify::moderateness_exponent(points);

    SweepReport report;
    report.epsilons = ladder;
    report.norms = norms;
    report.selector = selector;
    report.fitted_slope = fit.slope;
    report.r_squared = fit.r_squared;
    report.moderate = std::isfinite(fit.slope) && fit.r_squared >= kFitQuality;
    report.n_hat = std::max(0, static_cast<int>(std::ceil(-fit.slope - 1e-9)));
    return report;
}

TwinRunReport negligibility_twin(const ProblemTemplate& tpl,
                                 const std::vector<double>& ladder,
                                 mollify::Kernel kernel_a,
                                 mollify::Kernel kernel_b,
                                 const evolve::SolverConfig& cfg) {
    if (!tpl.g_is_unit())
        throw ScopeViolation("negligibility_twin: the uniqueness theory covers "
                             "g == 1 only");
    validate_ladder(ladder, tpl.grid);

    std::vector<evolve::ProblemSpec> runs_a, runs_b;
    for (double eps : ladder) {
        runs_a.push_back(realize(tpl, eps, kernel_a));
        runs_b.push_back(realize(tpl, eps, kernel_b));
    }
    std::vector<evolve::ProblemSpec> all = runs_a;
    all.insert(all.end(), runs_b.begin(), runs_b.end());
    const evolve::TimeGridPlan plan = family_plan(all, cfg);

    TwinRunReport report;
    report.epsilons = ladder;
    report.difference_norms.assign(ladder.size(), 0.0);
    report.solution_norms.assign(ladder.size(), 0.0);

    const long long count = static_cast<long long>(ladder.size());
    std::vector<std::exception_ptr> errors(ladder.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::threads()) if (kernels::threads() > 1)
#endif
    for (long long i = 0; i < count; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        try {
            const auto a = evolve::solve(runs_a[idx], plan);
            const auto b = evolve::solve(runs_b[idx], plan);
            report.difference_norms[idx] =
                sup_l2_difference(a.trajectory, b.trajectory);
            report.solution_norms[idx] =
                sup_selected_norm(a.trajectory, tpl.order.s, NormSelector::norm1);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    rethrow_first(errors);

    report.identical = std::all_of(report.difference_norms.begin(),
                                   report.difference_norms.end(),
                                   [](double d) { return d == 0.0; });
    const bool below_absolute =
        std::all_of(report.difference_norms.begin(), report.difference_norms.end(),
                    [](double d) { return d < kNegligibilityAbsolute; });

    if (!below_absolute) {
        std::vector<std::pair<double, double>> diff_points, sol_points;
        for (std::size_t i = 0; i < ladder.size(); ++i) {
            diff_points.emplace_back(ladder[i], report.difference_norms[i]);
            sol_points.emplace_back(ladder[i], report.solution_norms[i]);
        }
        report.difference_slope = mollify::moderateness_exponent(diff_points).slope;
        report.solution_slope = mollify::moderateness_exponent(sol_points).slope;
    }
    report.negligible =
        below_absolute ||
        report.difference_slope - report.solution_slope >= kNegligibilityMargin;
    return report;
}

CoherenceReport coherence_run(const ProblemTemplate& tpl,
                              const std::vector<double>& ladder,
                              CoherenceReport::ReferenceKind reference_kind,
                              const evolve::SolverConfig& cfg,
                              const ModalReference& analytic) {
    if (!tpl.g_is_unit())
        throw ScopeViolation("coherence_run: the coherence theory covers g == 1 only");
    if (has_singular_slot(tpl))
        throw ScopeViolation("coherence_run: coefficients must be smooth");
    validate_ladder(ladder, tpl.grid);
    if (reference_kind == CoherenceReport::ReferenceKind::analytic_modal && !analytic)
        throw Error("coherence_run: analytic_modal reference requested but none supplied");

    std::vector<evolve::ProblemSpec> problems;
    for (double eps : ladder) problems.push_back(realize(tpl, eps));
    const evolve::ProblemSpec reference_problem = realize_unregularized(tpl);
    std::vector<evolve::ProblemSpec> all = problems;
    all.push_back(reference_problem);
    const auto plan = family_plan(all, cfg); // one shared time grid

    // Reference trajectory at the shared snapshot times.
    std::vector<evolve::StateSnapshot> reference;
    if (reference_kind == CoherenceReport::ReferenceKind::fine_eps_refined) {
        reference = evolve::solve(reference_problem, plan).trajectory;
    } else {
        const auto skeleton = evolve::solve(reference_problem, plan).trajectory;
        reference.reserve(skeleton.size());
        for (const auto& snap : skeleton) {
            evolve::StateSnapshot ref{snap.t, Field::zeros(tpl.grid),
                                      Field::zeros(tpl.grid)};
            analytic(snap.t, ref.u);
            reference.push_back(std::move(ref));
        }
    }

    double scale = 0.0;
    for (const auto& snap : reference)
        scale = std::max(scale, spectral::l2_norm(snap.u));
    if (scale == 0.0) scale = 1.0;

    CoherenceReport report;
    report.epsilons = ladder;
    report.reference_kind = reference_kind;
    report.errors.assign(ladder.size(), 0.0);

    const long long count = static_cast<long long>(ladder.size());
    std::vector<std::exception_ptr> errors(ladder.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::threads()) if (kernels::threads() > 1)
#endif
    for (long long i = 0; i < count; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        try {
            const auto run = evolve::solve(problems[idx], plan);
            report.errors[idx] = sup_l2_difference(run.trajectory, reference) / scale;
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    rethrow_first(errors);

    report.monotone = true;
    for (std::size_t i = 1; i < report.errors.size(); ++i)
        if (report.errors[i] > report.errors[i - 1] * (1.0 + 1e-12))
            report.monotone = false;
    report.final_error = report.errors.back();
    return report;
}

evolve::ProblemSpec sample_problem(const RandomFamilyConfig& family,
                                   std::uint64_t seed, std::uint64_t index) {
    using random_fields::mix;
    using random_fields::uniform01;

    const Grid& grid = family.grid;
    evolve::ProblemSpec p;
    p.order.s = family.s;
    p.horizon = family.horizon;
    p.g = Field::constant(grid, 1.0);

    const double m_scale =
        family.coefficient_scale * uniform01(mix(seed ^ (index * 2 + 1)) ^ 0x6d);
    const double b_scale =
        family.coefficient_scale * uniform01(mix(seed ^ (index * 2 + 1)) ^ 0x62);
    p.m = random_fields::sample_nonnegative(grid, family.band, seed, index * 8 + 0);
    p.b = random_fields::sample_nonnegative(grid, family.band, seed, index * 8 + 1);
    const double m_max = p.m.max_value();
    const double b_max = p.b.max_value();
    kernels::scale(p.m.samples, m_max > 0.0 ? m_scale / m_max : 0.0);
    kernels::scale(p.b.samples, b_max > 0.0 ? b_scale / b_max : 0.0);

    random_fields::BandSpec data_band = family.band;
    data_band.amplitude = family.data_scale;
    p.u0 = random_fields::sample(grid, data_band, seed, index * 8 + 2);
    p.u1 = random_fields::sample(grid, data_band, seed, index * 8 + 3);

    evolve::TimeProfile profile;
    profile.kind = evolve::TimeProfile::Kind::sine;
    profile.amplitude = 1.0;
    profile.omega = 1.0 + 3.0 * uniform01(mix(seed ^ (index * 2 + 1)) ^ 0x66);
    profile.phase = 0.3;
    p.forcing = evolve::SourceTerm::separable(
        profile, random_fields::sample(grid, data_band, seed, index * 8 + 4));

    p.validate();
    return p;
}

double estimate_rhs(const evolve::ProblemSpec& p, EnergyEstimate which) {
    const Grid& grid = p.grid();
    const double s = p.order.s;
    const double sup_f = p.forcing.sup_l2(grid, p.horizon);

    if (which == EnergyEstimate::e1) {
        const double m_inf = spectral::lp_norm(p.m, std::numeric_limits<double>::infinity());
        const double b_inf = spectral::lp_norm(p.b, std::numeric_limits<double>::infinity());
        const double data = spectral::hs_norm(p.u0, s).sum_form +
                            spectral::l2_norm(p.u1) + sup_f;
        return (2.0 + m_inf) * (1.0 + b_inf + std::sqrt(m_inf)) * data;
    }

    if (!(grid.dim > 2.0 * s))
        throw ScopeViolation("estimate_rhs: E2 requires the d > 2s regime");
    const double d = grid.dim;
    const double m_ds = spectral::lp_norm(p.m, d / s);
    const double m_d2s = spectral::lp_norm(p.m, d / (2.0 * s));
    const double b_ds = spectral::lp_norm(p.b, d / s);
    const double data = spectral::hs_norm(p.u0, 2.0 * s).sum_form +
                        spectral::hs_norm(p.u1, s).sum_form + sup_f;
    return (1.0 + m_ds) * (1.0 + m_d2s) * (1.0 + b_ds) * (1.0 + b_ds) * data;
}

double estimate_lhs(const std::vector<evolve::StateSnapshot>& trajectory,
                    double s, const Field& /*g_coef*/, EnergyEstimate which) {
    const NormSelector sel =
        which == EnergyEstimate::e1 ? NormSelector::norm1 : NormSelector::norm2;
    return sup_selected_norm(trajectory, s, sel);
}

BoundCheckReport energy_bound_check(const RandomFamilyConfig& family,
                                    int n_samples, EnergyEstimate which,
                                    std::uint64_t seed,
                                    const evolve::SolverConfig& cfg,
                                    double frozen_bound) {
    if (n_samples < 1) throw Error("energy_bound_check: n_samples must be >= 1");
    if (which == EnergyEstimate::e2 && !(family.grid.dim > 2.0 * family.s))
        throw ScopeViolation("energy_bound_check: E2 requires d > 2s, got d = " +
                             std::to_string(family.grid.dim) + ", s = " +
                             std::to_string(family.s));
    if (frozen_bound == 0.0)
        frozen_bound = which == EnergyEstimate::e1 ? kFrozenRatioBoundE1
                                                   : kFrozenRatioBoundE2;

    BoundCheckReport report;
    report.frozen_bound = frozen_bound;
    report.ratios.assign(static_cast<std::size_t>(n_samples), 0.0);

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_samples));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::threads()) if (kernels::threads() > 1)
#endif
    for (long long i = 0; i < n_samples; ++i) {
        try {
            const auto p = sample_problem(family, seed, static_cast<std::uint64_t>(i));
            const auto result = evolve::solve(p, cfg);
            const double lhs = estimate_lhs(result.trajectory, family.s, p.g, which);
            const double rhs = estimate_rhs(p, which);
            report.ratios[static_cast<std::size_t>(i)] = rhs > 0.0 ? lhs / rhs : 0.0;
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    rethrow_first(errors);

    std::vector<double> sorted = report.ratios;
    std::sort(sorted.begin(), sorted.end());
    report.max_ratio = sorted.back();
    report.median_ratio = sorted[sorted.size() / 2];
    report.pass = report.max_ratio <= frozen_bound;
    return report;
}

namespace {

random_fields::BandSpec probe_band(const Grid& grid) {
    random_fields::BandSpec band;
    band.max_mode = std::max(2, grid.points_per_axis / 4);
    band.decay = 2.5; // fast enough that refining the grid adds little energy
    band.amplitude = 1.0;
    return band;
}

} // namespace

double sobolev_ratio_probe(const Grid& grid, double s, int n_samples,
                           std::uint64_t seed) {
    if (!(grid.dim > 2.0 * s))
        throw ScopeViolation("sobolev_ratio_probe: requires d > 2s");
    const double q = 2.0 * grid.dim / (grid.dim - 2.0 * s);
    const auto band = probe_band(grid);

    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Field f = random_fields::sample(grid, band, seed,
                                              static_cast<std::uint64_t>(i));
        const double num = spectral::lp_norm(f, q);
        const double den = spectral::l2_norm(spectral::frac_laplacian(f, s / 2.0));
        if (den > 0.0) worst = std::max(worst, num * num / (den * den));
    }
    return worst;
}

double kato_ponce_probe(const Grid& grid, double s, int n_samples,
                        std::uint64_t seed) {
    if (!(grid.dim > 2.0 * s))
        throw ScopeViolation("kato_ponce_probe: requires d > 2s");
    const double q = 2.0 * grid.dim / (grid.dim - 2.0 * s);
    const double p_exp = grid.dim / s;
    const auto band = probe_band(grid);

    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Field f = random_fields::sample(grid, band, seed, 2 * static_cast<std::uint64_t>(i));
        const Field h = random_fields::sample(grid, band, seed, 2 * static_cast<std::uint64_t>(i) + 1);
        Field fh = Field::zeros(grid);
        kernels::multiply(f.samples, h.samples, fh.samples);

        const double num = spectral::l2_norm(spectral::frac_laplacian(fh, s / 2.0));
        const double den =
            spectral::lp_norm(spectral::frac_laplacian(f, s / 2.0), p_exp) *
                spectral::lp_norm(h, q) +
            spectral::lp_norm(f, p_exp) *
                spectral::lp_norm(spectral::frac_laplacian(h, s / 2.0), q);
        if (den > 0.0) worst = std::max(worst, num / den);
    }
    return worst;
}

} // namespace fracwave::vws_lab
