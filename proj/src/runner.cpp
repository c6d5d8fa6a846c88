#include "fracwave/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fracwave/duhamel.hpp"
#include "fracwave/io.hpp"

namespace fracwave::runner {

namespace {

using nlohmann::json;

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Outputs {
    std::filesystem::path dir;
    std::vector<std::string> names;

    std::filesystem::path file(const std::string& name) {
        names.push_back(name);
        return dir / name;
    }
};

void run_solve(const config::RunConfig& cfg, Outputs& out,
               std::vector<Verdict>& verdicts) {
    const auto problem = config::build_problem(cfg);
    const auto solver = config::build_solver(cfg);
    const auto result = evolve::solve(problem, solver);

    io::write_trajectory_csv(out.file("trajectory.csv"), result.trajectory,
                             result.report, problem);
    if (cfg.params.dump_fields) {
        for (std::size_t k = 0; k < result.trajectory.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "u_%05zu.bin", k);
            io::write_field_binary(out.file(name), result.trajectory[k].u);
            out.names.push_back(std::string(name) + ".json");
            std::snprintf(name, sizeof(name), "ut_%05zu.bin", k);
            io::write_field_binary(out.file(name), result.trajectory[k].ut);
            out.names.push_back(std::string(name) + ".json");
        }
    }

    verdicts.push_back({"finite-trajectory", true, "no blow-up guard trip"});
    const auto& energy = result.report.energy;
    const bool homogeneous = problem.forcing.is_zero();
    const bool undamped = problem.b.max_value() == 0.0;
    if (homogeneous && undamped && energy.front() > 0.0) {
        double worst = 0.0;
        for (double e : energy)
            worst = std::max(worst, std::fabs(e - energy.front()) / energy.front());
        verdicts.push_back({"energy-conservation", worst <= 1e-6,
                            "max |E(t)-E(0)|/E(0) = " + io::format_double(worst)});
    } else if (homogeneous && energy.front() > 0.0) {
        const double slack = 1e-8 * energy.front();
        verdicts.push_back({"energy-decay",
                            result.report.monotone_violation <= slack,
                            "max positive jump = " +
                                io::format_double(result.report.monotone_violation)});
    }
}

void run_sweep(const config::RunConfig& cfg, Outputs& out,
               std::vector<Verdict>& verdicts) {
    const auto tpl = config::build_template(cfg);
    const auto ladder = cfg.params.ladder.empty() ? vws_lab::default_ladder(tpl.grid)
                                                  : cfg.params.ladder;
    const auto report = vws_lab::moderateness_sweep(tpl, ladder,
                                                    cfg.params.norm_selector,
                                                    config::build_solver(cfg));

    io::CsvWriter csv({"epsilon", "sup_norm"});
    for (std::size_t i = 0; i < report.epsilons.size(); ++i)
        csv.add_row(std::vector<double>{report.epsilons[i], report.norms[i]});
    csv.write(out.file("sweep.csv"));

    json summary{{"fitted_slope", report.fitted_slope},
                 {"r_squared", report.r_squared},
                 {"verdict", report.moderate ? "moderate" : "inconclusive"},
                 {"n_hat", report.n_hat}};
    io::write_text_atomic(out.file("sweep_summary.json"), summary.dump(2) + "\n");

    verdicts.push_back({"moderate-fit", report.moderate,
                        "slope = " + io::format_double(report.fitted_slope) +
                            ", r^2 = " + io::format_double(report.r_squared)});
}

void run_twin(const config::RunConfig& cfg, Outputs& out,
              std::vector<Verdict>& verdicts) {
    const auto tpl = config::build_template(cfg);
    const auto ladder = cfg.params.ladder.empty() ? vws_lab::default_ladder(tpl.grid)
                                                  : cfg.params.ladder;
    const auto report = vws_lab::negligibility_twin(tpl, ladder, cfg.params.kernel,
                                                    cfg.params.kernel_b,
                                                    config::build_solver(cfg));

    io::CsvWriter csv({"epsilon", "difference_l2", "solution_norm1"});
    for (std::size_t i = 0; i < report.epsilons.size(); ++i)
        csv.add_row(std::vector<double>{report.epsilons[i], report.difference_norms[i],
                                        report.solution_norms[i]});
    csv.write(out.file("twin.csv"));

    json summary{{"difference_slope", report.difference_slope},
                 {"solution_slope", report.solution_slope},
                 {"identical", report.identical},
                 {"negligible", report.negligible}};
    io::write_text_atomic(out.file("twin_summary.json"), summary.dump(2) + "\n");

    verdicts.push_back({"negligible-difference", report.negligible,
                        "slope gap = " +
                            io::format_double(report.difference_slope -
                                              report.solution_slope)});
}

// Closed-form reference for a single damped mode: a'' + beta a' + w0^2 a = 0
// with a(0) = amp, a'(0) = 0, underdamped.
vws_lab::ModalReference make_modal_reference(const config::RunConfig& cfg,
                                             const Grid& grid) {
    const auto& pb = cfg.problem;
    auto constant = [](const config::FieldSource& s) {
        return s.kind == config::FieldSource::Kind::constant;
    };
    if (!constant(pb.m) || !constant(pb.b) || !constant(pb.g) || pb.g.value != 1.0 ||
        pb.u0.kind != config::FieldSource::Kind::harmonic || !constant(pb.u1) ||
        pb.u1.value != 0.0 || !pb.forcing.zero)
        throw ConfigError(
            "params.reference: analytic_modal needs g = 1, constant m and b, "
            "harmonic u0, zero u1 and zero forcing");

    const double k0 = 2.0 * std::numbers::pi / grid.box_length;
    const double kx = pb.u0.mode[0] * k0;
    const double ky = grid.dim == 2 ? pb.u0.mode[1] * k0 : 0.0;
    const double k2 = kx * kx + ky * ky;
    const double w0 = std::sqrt(std::pow(k2, cfg.problem.s) + pb.m.value);
    const double beta = pb.b.value;
    if (!(beta < 2.0 * w0))
        throw ConfigError("params.reference: analytic_modal needs the mode "
                          "underdamped (b < 2 omega)");
    const double nu = std::sqrt(w0 * w0 - 0.25 * beta * beta);
    const Field shape = config::build_field(pb.u0, grid, cfg.base_dir);

    return [=](double t, Field& u_out) {
        const double a = std::exp(-0.5 * beta * t) *
                         (std::cos(nu * t) + 0.5 * beta / nu * std::sin(nu * t));
        u_out = shape;
        for (double& v : u_out.samples) v *= a;
    };
}

void run_coherence(const config::RunConfig& cfg, Outputs& out,
                   std::vector<Verdict>& verdicts) {
    const auto tpl = config::build_template(cfg);
    const auto ladder = cfg.params.ladder.empty() ? vws_lab::default_ladder(tpl.grid)
                                                  : cfg.params.ladder;
    vws_lab::ModalReference analytic;
    if (cfg.params.reference ==
        vws_lab::CoherenceReport::ReferenceKind::analytic_modal)
        analytic = make_modal_reference(cfg, tpl.grid);
    const auto report = vws_lab::coherence_run(tpl, ladder, cfg.params.reference,
                                               config::build_solver(cfg), analytic);

    io::CsvWriter csv({"epsilon", "relative_error"});
    for (std::size_t i = 0; i < report.epsilons.size(); ++i)
        csv.add_row(std::vector<double>{report.epsilons[i], report.errors[i]});
    csv.write(out.file("coherence.csv"));

    json summary{{"monotone", report.monotone},
                 {"final_error", report.final_error}};
    io::write_text_atomic(out.file("coherence_summary.json"), summary.dump(2) + "\n");

    verdicts.push_back({"coherent", report.monotone && report.final_error < 1e-3,
                        "final error = " + io::format_double(report.final_error) +
                            (report.monotone ? ", monotone" : ", NOT monotone")});
}

void run_duhamel(const config::RunConfig& cfg, Outputs& out,
                 std::vector<Verdict>& verdicts) {
    const auto problem = config::build_problem(cfg);
    const auto solver = config::build_solver(cfg);
    const auto plan = evolve::plan_time_grid(problem, solver);
    const int n_tau = cfg.params.n_tau > 0 ? cfg.params.n_tau : plan.n_steps;

    const auto decomposition = duhamel::duhamel_solve(problem, solver, n_tau);
    const auto direct = evolve::solve(problem, solver);

    double scale = 0.0;
    for (const auto& snap : direct.trajectory)
        scale = std::max(scale, spectral::l2_norm(snap.u));
    if (scale == 0.0) scale = 1.0;

    io::CsvWriter csv({"t", "discrepancy"});
    double worst = 0.0;
    Field diff = Field::zeros(problem.grid());
    for (std::size_t k = 0; k < direct.trajectory.size(); ++k) {
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff.samples[i] = decomposition.reconstructed[k].u.samples[i] -
                              direct.trajectory[k].u.samples[i];
        const double d = spectral::l2_norm(diff) / scale;
        worst = std::max(worst, d);
        csv.add_row(std::vector<double>{direct.trajectory[k].t, d});
    }
    csv.write(out.file("duhamel.csv"));

    json summary{{"n_tau", n_tau}, {"max_discrepancy", worst}};
    io::write_text_atomic(out.file("duhamel_summary.json"), summary.dump(2) + "\n");

    verdicts.push_back({"duhamel-agreement", worst <= 1e-4,
                        "max discrepancy = " + io::format_double(worst)});
}

void run_probes(const config::RunConfig& cfg, Outputs& out,
                std::vector<Verdict>& verdicts) {
    const auto solver = config::build_solver(cfg);

    if (cfg.params.probe == config::ProbeKind::energy_bound) {
        vws_lab::RandomFamilyConfig family;
        family.grid = config::build_grid(cfg);
        family.s = cfg.problem.s;
        family.horizon = cfg.problem.horizon;
        family.band.max_mode = 6; // the family the frozen C* was recorded on
        const auto report = vws_lab::energy_bound_check(
            family, cfg.params.n_samples, cfg.params.estimate, cfg.seed, solver);

        io::CsvWriter csv({"sample", "ratio"});
        for (std::size_t i = 0; i < report.ratios.size(); ++i)
            csv.add_row(std::vector<double>{static_cast<double>(i), report.ratios[i]});
        csv.write(out.file("energy_bound.csv"));

        json summary{{"max_ratio", report.max_ratio},
                     {"median_ratio", report.median_ratio},
                     {"frozen_bound", report.frozen_bound},
                     {"pass", report.pass}};
        io::write_text_atomic(out.file("energy_bound_summary.json"),
                              summary.dump(2) + "\n");
        verdicts.push_back({"within-frozen-bound", report.pass,
                            "max ratio = " + io::format_double(report.max_ratio) +
                                " vs C* = " + io::format_double(report.frozen_bound)});
        return;
    }

    std::vector<int> resolutions = cfg.params.resolutions;
    if (resolutions.empty()) resolutions = {cfg.grid.n, 2 * cfg.grid.n};

    io::CsvWriter csv({"n", "max_ratio"});
    std::vector<double> ratios;
    for (int n : resolutions) {
        const Grid grid = make_grid(cfg.grid.dim, n, cfg.grid.box_length);
        const double ratio =
            cfg.params.probe == config::ProbeKind::sobolev
                ? vws_lab::sobolev_ratio_probe(grid, cfg.problem.s,
                                               cfg.params.n_samples, cfg.seed)
                : vws_lab::kato_ponce_probe(grid, cfg.problem.s,
                                            cfg.params.n_samples, cfg.seed);
        ratios.push_back(ratio);
        csv.add_row(std::vector<double>{static_cast<double>(n), ratio});
    }
    csv.write(out.file("probe.csv"));

    double spread = 0.0;
    for (double r : ratios)
        spread = std::max(spread, std::fabs(r - ratios.front()) /
                                      std::max(ratios.front(), 1e-300));
    json summary{{"ratios", ratios}, {"relative_spread", spread}};
    io::write_text_atomic(out.file("probe_summary.json"), summary.dump(2) + "\n");

    verdicts.push_back({"bounded-across-resolutions", spread < 0.10,
                        "relative spread = " + io::format_double(spread)});
}

} // namespace

const char* kArtifactVersion = "fracwave 0.1.0";

bool RunManifest::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunManifest run(const config::RunConfig& cfg, const std::string& config_bytes) {
    RunManifest manifest;
    manifest.config_hash = fnv1a_hex(config_bytes);
    manifest.artifact_version = kArtifactVersion;
    manifest.started_at = iso_now();

    std::filesystem::create_directories(cfg.output_dir);
    Outputs out{cfg.output_dir, {}};

    switch (cfg.experiment) {
    case config::Experiment::solve: run_solve(cfg, out, manifest.verdicts); break;
    case config::Experiment::sweep: run_sweep(cfg, out, manifest.verdicts); break;
    case config::Experiment::twin: run_twin(cfg, out, manifest.verdicts); break;
    case config::Experiment::coherence: run_coherence(cfg, out, manifest.verdicts); break;
    case config::Experiment::duhamel_check: run_duhamel(cfg, out, manifest.verdicts); break;
    case config::Experiment::probes: run_probes(cfg, out, manifest.verdicts); break;
    }

    manifest.outputs = out.names;
    manifest.finished_at = iso_now();

    json doc;
    doc["config_hash"] = manifest.config_hash;
    doc["artifact_version"] = manifest.artifact_version;
    doc["started_at"] = manifest.started_at;
    doc["finished_at"] = manifest.finished_at;
    doc["outputs"] = manifest.outputs;
    json verdicts = json::array();
    for (const auto& v : manifest.verdicts)
        verdicts.push_back({{"name", v.name},
                            {"pass", v.pass},
                            {"detail", v.detail}});
    doc["verdicts"] = verdicts;
    io::write_text_atomic(cfg.output_dir / "manifest.json", doc.dump(2) + "\n");
    manifest.outputs.push_back("manifest.json");
    return manifest;
}

} // namespace fracwave::runner
