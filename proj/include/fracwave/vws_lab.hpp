#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/evolve.hpp"
#include "fracwave/mollify.hpp"
#include "fracwave/random_fields.hpp"

// The very-weak-solution experiment harness: moderateness sweeps over an
// epsilon ladder, twin-mollifier negligibility (uniqueness) runs, coherence
// runs against a classical reference, and the empirical inequality probes.

namespace fracwave::vws_lab {

enum class NormSelector { norm1, norm2, norm3 };

double select_norm(const spectral::CompositeNorms& n, NormSelector sel);

// ---------------------------------------------------------------------------
// Problem templates: a Cauchy problem whose slots may be singular catalog
// entries; realize(eps) builds the regularized ProblemSpec for one net index.

struct SlotSpec {
    enum class Kind {
        fixed,              // used as-is at every eps
        regularized_smooth, // base convolved with psi_eps
        singular            // offset + singular_net(datum, eps)
    };
    Kind kind = Kind::fixed;
    Field base;
    std::optional<mollify::SingularDatum> datum;
    double offset = 0.0;

    static SlotSpec fixed(Field f);
    static SlotSpec smooth(Field f);
    static SlotSpec singular(mollify::SingularDatum d, double offset = 0.0);
};

struct ForcingSlot {
    bool zero = true;
    evolve::TimeProfile profile{};
    SlotSpec spatial;
};

struct ProblemTemplate {
    spectral::FracOrder order{};
    double horizon = 1.0;
    Grid grid;
    SlotSpec g, m, b, u0, u1;
    ForcingSlot forcing;
    mollify::Kernel kernel = mollify::Kernel::compact_bump;

    bool g_is_unit() const;
};

evolve::ProblemSpec realize(const ProblemTemplate& tpl, double epsilon);
evolve::ProblemSpec realize(const ProblemTemplate& tpl, double epsilon,
                            mollify::Kernel kernel);
// eps -> 0 limit: every slot used unregularized.
evolve::ProblemSpec realize_unregularized(const ProblemTemplate& tpl);

// Default ladder eps_k = 2^-k, k = 2..6, clipped at 4*dx; >= 4 entries kept.
std::vector<double> default_ladder(const Grid& grid);
void validate_ladder(const std::vector<double>& ladder, const Grid& grid);

// ---------------------------------------------------------------------------
// Reports

struct SweepReport {
    std::vector<double> epsilons;
    std::vector<double> norms; // sup over snapshot times of the selected norm
    NormSelector selector = NormSelector::norm1;
    double fitted_slope = 0.0;
    double r_squared = 0.0;
    bool moderate = false; // r^2 >= kFitQuality and the fit is finite
    int n_hat = 0;         // ceil(-slope), floored at 0
};

struct TwinRunReport {
    std::vector<double> epsilons;
    std::vector<double> difference_norms; // sup_t ||u_eps - u~_eps||_{L2}
    std::vector<double> solution_norms;   // sup_t ||u_eps||_1 (kernel A run)
    double difference_slope = 0.0;
    double solution_slope = 0.0;
    bool identical = false; // all differences exactly zero
    bool negligible = false;
};

struct CoherenceReport {
    enum class ReferenceKind { analytic_modal, fine_eps_refined };
    std::vector<double> epsilons;
    std::vector<double> errors; // sup_t ||u_eps - u_ref||_{L2}, relative
    ReferenceKind reference_kind = ReferenceKind::fine_eps_refined;
    bool monotone = false;
    double final_error = 0.0;
};

struct BoundCheckReport {
    std::vector<double> ratios; // per sample, LHS / RHS
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    double frozen_bound = 0.0;
    bool pass = false;
};

constexpr double kFitQuality = 0.95;
constexpr double kNegligibilityMargin = 1.0;   // required slope gap
constexpr double kNegligibilityAbsolute = 1e-8; // or all differences below this

// ---------------------------------------------------------------------------
// Experiments

SweepReport moderateness_sweep(const ProblemTemplate& tpl,
                               const std::vector<double>& ladder,
                               NormSelector selector,
                               const evolve::SolverConfig& cfg);

// Requires g == 1 in the template (the uniqueness theory's scope).
TwinRunReport negligibility_twin(const ProblemTemplate& tpl,
                                 const std::vector<double>& ladder,
                                 mollify::Kernel kernel_a,
                                 mollify::Kernel kernel_b,
                                 const evolve::SolverConfig& cfg);

// Requires g == 1 and no singular slots. analytic_modal additionally needs
// constant coefficients and single-harmonic data; it is supplied by the
// caller as a closed-form reference trajectory evaluator.
using ModalReference = std::function<void(double t, Field& u_out)>;

CoherenceReport coherence_run(const ProblemTemplate& tpl,
                              const std::vector<double>& ladder,
                              CoherenceReport::ReferenceKind reference_kind,
                              const evolve::SolverConfig& cfg,
                              const ModalReference& analytic = nullptr);

// ---------------------------------------------------------------------------
// Energy-estimate regression checks.
//
// E1 (g == 1):  sup_t ||u||_1 <=
//   (2+||m||_inf)(1+||b||_inf+||m||_inf^(1/2)) (||u0||_{H^s}+||u1||_{L2}+sup_t||f||_{L2})
// E2 (g == 1, d > 2s):  sup_t ||u||_2 <=
//   (1+||m||_{L^{d/s}})(1+||m||_{L^{d/2s}})(1+||b||_{L^{d/s}})^2
//     (||u0||_{H^{2s}}+||u1||_{H^s}+sup_t||f||_{L2})
// with the implicit constant set to 1; the reported ratios are LHS/RHS and
// must stay under the frozen regression constants below.

enum class EnergyEstimate { e1, e2 };

struct RandomFamilyConfig {
    Grid grid;
    double s = 1.0;
    double horizon = 1.0;
    random_fields::BandSpec band{};
    double coefficient_scale = 1.0; // max amplitude for m, b
    double data_scale = 1.0;        // amplitude for u0, u1, f
};

evolve::ProblemSpec sample_problem(const RandomFamilyConfig& family,
                                   std::uint64_t seed, std::uint64_t index);

double estimate_rhs(const evolve::ProblemSpec& p, EnergyEstimate which);
double estimate_lhs(const std::vector<evolve::StateSnapshot>& trajectory,
                    double s, const Field& g_coef, EnergyEstimate which);

// Regression constants recorded at the first run of the shipped seeded
// benchmark family (seed 20240811, 50 samples; observed max ratios 0.380 and
// 0.963) and versioned here with ~10% headroom for cross-platform rounding.
constexpr double kFrozenRatioBoundE1 = 0.45;
constexpr double kFrozenRatioBoundE2 = 1.05;

BoundCheckReport energy_bound_check(const RandomFamilyConfig& family,
                                    int n_samples, EnergyEstimate which,
                                    std::uint64_t seed,
                                    const evolve::SolverConfig& cfg,
                                    double frozen_bound = 0.0);

// ---------------------------------------------------------------------------
// Functional inequality probes (d > 2s scope, zero-mean band-limited samples).

// max over samples of ||f||_{L^q}^2 / ||(-Delta)^(s/2) f||_{L2}^2, q = 2d/(d-2s).
double sobolev_ratio_probe(const Grid& grid, double s, int n_samples,
                           std::uint64_t seed);

// max over samples of
//   ||(-Delta)^(s/2)(fh)||_{L2} /
//     ( ||(-Delta)^(s/2) f||_{L^p} ||h||_{L^q} + ||f||_{L^p} ||(-Delta)^(s/2) h||_{L^q} )
// with q = 2d/(d-2s), p = d/s.
double kato_ponce_probe(const Grid& grid, double s, int n_samples,
                        std::uint64_t seed);

} // namespace fracwave::vws_lab
