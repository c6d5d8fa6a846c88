#include "fracwave/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracwave/io.hpp"

namespace fracwave::config {

namespace {

using nlohmann::json;

// Collects every violation with its field path; parsing continues so a bad
// config is reported in one shot.
struct Issues {
    std::vector<std::string> lines;

    void add(const std::string& path, const std::string& message) {
        lines.push_back(path + ": " + message);
    }
    void raise_if_any() const {
        if (lines.empty()) return;
        std::string all = "invalid config:";
        for (const auto& line : lines) all += "\n  " + line;
        throw ConfigError(all);
    }
};

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed, Issues& issues) {
    if (!obj.is_object()) {
        issues.add(path, "expected an object");
        return;
    }
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) issues.add(path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback, Issues& issues, bool required = false) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "required");
        return fallback;
    }
    if (!obj[key].is_number()) {
        issues.add(path + "." + key, "expected a number");
        return fallback;
    }
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback, Issues& issues, bool required = false) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "required");
        return fallback;
    }
    if (!obj[key].is_number_integer()) {
        issues.add(path + "." + key, "expected an integer");
        return fallback;
    }
    return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback, Issues& issues,
                       bool required = false) {
    if (!obj.contains(key)) {
        if (required) issues.add(path + "." + key, "required");
        return fallback;
    }
    if (!obj[key].is_string()) {
        issues.add(path + "." + key, "expected a string");
        return fallback;
    }
    return obj[key].get<std::string>();
}

mollify::Kernel parse_kernel(const std::string& name, const std::string& path,
                             Issues& issues) {
    if (name == "compact_bump") return mollify::Kernel::compact_bump;
    if (name == "gaussian") return mollify::Kernel::gaussian;
    issues.add(path, "unknown kernel '" + name + "' (compact_bump | gaussian)");
    return mollify::Kernel::compact_bump;
}

const char* kernel_name(mollify::Kernel k) {
    return k == mollify::Kernel::compact_bump ? "compact_bump" : "gaussian";
}

mollify::SingularKind parse_singular_kind(const std::string& name,
                                          const std::string& path, Issues& issues) {
    if (name == "delta") return mollify::SingularKind::delta;
    if (name == "delta_prime") return mollify::SingularKind::delta_prime;
    if (name == "delta_squared") return mollify::SingularKind::delta_squared;
    if (name == "heaviside") return mollify::SingularKind::heaviside;
    if (name == "smooth_reference") return mollify::SingularKind::smooth_reference;
    issues.add(path, "unknown singular kind '" + name + "'");
    return mollify::SingularKind::delta;
}

const char* singular_kind_name(mollify::SingularKind k) {
    switch (k) {
    case mollify::SingularKind::delta: return "delta";
    case mollify::SingularKind::delta_prime: return "delta_prime";
    case mollify::SingularKind::delta_squared: return "delta_squared";
    case mollify::SingularKind::heaviside: return "heaviside";
    case mollify::SingularKind::smooth_reference: return "smooth_reference";
    }
    return "delta";
}

mollify::SingularDatum parse_datum(const json& obj, const std::string& path,
                                   Issues& issues) {
    mollify::SingularDatum datum;
    check_keys(obj, path, {"kind", "center", "amplitude"}, issues);
    datum.kind = parse_singular_kind(
        get_string(obj, path, "kind", "delta", issues, true), path + ".kind", issues);
    datum.amplitude = get_number(obj, path, "amplitude", 1.0, issues);
    if (obj.contains("center")) {
        if (!obj["center"].is_array() || obj["center"].empty() ||
            obj["center"].size() > 2) {
            issues.add(path + ".center", "expected an array of 1 or 2 coordinates");
        } else {
            for (std::size_t i = 0; i < obj["center"].size(); ++i)
                datum.center[i] = obj["center"][i].get<double>();
        }
    } else {
        issues.add(path + ".center", "required");
    }
    return datum;
}

mollify::MollifierSpec parse_mollifier(const json& obj, const std::string& path,
                                       Issues& issues) {
    mollify::MollifierSpec spec;
    check_keys(obj, path, {"kernel", "epsilon"}, issues);
    spec.kernel = parse_kernel(get_string(obj, path, "kernel", "compact_bump", issues),
                               path + ".kernel", issues);
    spec.epsilon = get_number(obj, path, "epsilon", 0.25, issues, true);
    if (!(spec.epsilon > 0.0) || spec.epsilon > 1.0)
        issues.add(path + ".epsilon", "must lie in (0, 1]");
    return spec;
}

FieldSource parse_source(const json& obj, const std::string& path, Issues& issues) {
    FieldSource src;
    if (obj.is_number()) { // shorthand: bare number = constant
        src.kind = FieldSource::Kind::constant;
        src.value = obj.get<double>();
        return src;
    }
    if (!obj.is_object()) {
        issues.add(path, "expected a number or an object");
        return src;
    }
    const std::string kind = get_string(obj, path, "kind", "", issues, true);
    if (kind == "constant") {
        check_keys(obj, path, {"kind", "value"}, issues);
        src.kind = FieldSource::Kind::constant;
        src.value = get_number(obj, path, "value", 0.0, issues, true);
    } else if (kind == "file") {
        check_keys(obj, path, {"kind", "path"}, issues);
        src.kind = FieldSource::Kind::file;
        src.path = get_string(obj, path, "path", "", issues, true);
    } else if (kind == "singular") {
        check_keys(obj, path, {"kind", "datum", "mollifier", "offset"}, issues);
        src.kind = FieldSource::Kind::singular;
        if (obj.contains("datum"))
            src.datum = parse_datum(obj["datum"], path + ".datum", issues);
        else
            issues.add(path + ".datum", "required");
        if (obj.contains("mollifier"))
            src.mollifier = parse_mollifier(obj["mollifier"], path + ".mollifier", issues);
        src.offset = get_number(obj, path, "offset", 0.0, issues);
    } else if (kind == "harmonic") {
        check_keys(obj, path, {"kind", "mode", "amplitude", "phase"}, issues);
        src.kind = FieldSource::Kind::harmonic;
        if (obj.contains("mode") && obj["mode"].is_array() && !obj["mode"].empty() &&
            obj["mode"].size() <= 2) {
            for (std::size_t i = 0; i < obj["mode"].size(); ++i)
                src.mode[i] = obj["mode"][i].get<int>();
            if (obj["mode"].size() == 1) src.mode[1] = 0;
        } else {
            issues.add(path + ".mode", "expected an array of 1 or 2 integers");
        }
        src.amplitude = get_number(obj, path, "amplitude", 1.0, issues);
        src.phase = get_number(obj, path, "phase", 0.0, issues);
    } else if (!kind.empty()) {
        issues.add(path + ".kind",
                   "unknown kind '" + kind + "' (constant | file | singular | harmonic)");
    }
    return src;
}

evolve::TimeProfile parse_profile(const json& obj, const std::string& path,
                                  Issues& issues) {
    evolve::TimeProfile profile;
    check_keys(obj, path, {"kind", "amplitude", "omega", "phase"}, issues);
    const std::string kind = get_string(obj, path, "kind", "constant", issues);
    if (kind == "constant") profile.kind = evolve::TimeProfile::Kind::constant;
    else if (kind == "sine") profile.kind = evolve::TimeProfile::Kind::sine;
    else if (kind == "cosine") profile.kind = evolve::TimeProfile::Kind::cosine;
    else issues.add(path + ".kind", "unknown profile '" + kind + "'");
    profile.amplitude = get_number(obj, path, "amplitude", 1.0, issues);
    profile.omega = get_number(obj, path, "omega", 0.0, issues);
    profile.phase = get_number(obj, path, "phase", 0.0, issues);
    return profile;
}

Experiment parse_experiment(const std::string& name, Issues& issues) {
    if (name == "solve") return Experiment::solve;
    if (name == "sweep") return Experiment::sweep;
    if (name == "twin") return Experiment::twin;
    if (name == "coherence") return Experiment::coherence;
    if (name == "duhamel-check") return Experiment::duhamel_check;
    if (name == "probes") return Experiment::probes;
    issues.add("experiment", "unknown experiment '" + name + "'");
    return Experiment::solve;
}

json source_to_json(const FieldSource& src) {
    switch (src.kind) {
    case FieldSource::Kind::constant:
        return json{{"kind", "constant"}, {"value", src.value}};
    case FieldSource::Kind::file:
        return json{{"kind", "file"}, {"path", src.path}};
    case FieldSource::Kind::singular: {
        json j{{"kind", "singular"},
               {"datum",
                {{"kind", singular_kind_name(src.datum.kind)},
                 {"center", {src.datum.center[0], src.datum.center[1]}},
                 {"amplitude", src.datum.amplitude}}},
               {"offset", src.offset}};
        if (src.mollifier)
            j["mollifier"] = {{"kernel", kernel_name(src.mollifier->kernel)},
                              {"epsilon", src.mollifier->epsilon}};
        return j;
    }
    case FieldSource::Kind::harmonic:
        return json{{"kind", "harmonic"},
                    {"mode", {src.mode[0], src.mode[1]}},
                    {"amplitude", src.amplitude},
                    {"phase", src.phase}};
    }
    return json::object();
}

json profile_to_json(const evolve::TimeProfile& p) {
    const char* kind = p.kind == evolve::TimeProfile::Kind::constant ? "constant"
                       : p.kind == evolve::TimeProfile::Kind::sine   ? "sine"
                                                                     : "cosine";
    return json{{"kind", kind},
                {"amplitude", p.amplitude},
                {"omega", p.omega},
                {"phase", p.phase}};
}

} // namespace

std::string to_string(Experiment e) {
    switch (e) {
    case Experiment::solve: return "solve";
    case Experiment::sweep: return "sweep";
    case Experiment::twin: return "twin";
    case Experiment::coherence: return "coherence";
    case Experiment::duhamel_check: return "duhamel-check";
    case Experiment::probes: return "probes";
    }
    return "solve";
}

RunConfig parse_config(const std::string& bytes,
                       const std::filesystem::path& base_dir) {
    Issues issues;
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.base_dir = base_dir;
    check_keys(doc, "config",
               {"experiment", "grid", "problem", "solver", "params", "seed",
                "output_dir"},
               issues);

    cfg.experiment =
        parse_experiment(get_string(doc, "config", "experiment", "solve", issues, true),
                         issues);

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        check_keys(g, "grid", {"dim", "n", "L"}, issues);
        cfg.grid.dim = get_int(g, "grid", "dim", 1, issues, true);
        cfg.grid.n = get_int(g, "grid", "n", 64, issues, true);
        cfg.grid.box_length = get_number(g, "grid", "L", 1.0, issues, true);
        if (cfg.grid.dim != 1 && cfg.grid.dim != 2)
            issues.add("grid.dim", "must be 1 or 2");
        if (cfg.grid.n < 8 || (cfg.grid.n & (cfg.grid.n - 1)) != 0)
            issues.add("grid.n", "must be a power of two >= 8");
        if (!(cfg.grid.box_length > 0.0)) issues.add("grid.L", "must be positive");
    } else {
        issues.add("grid", "required");
    }

    if (doc.contains("problem")) {
        const json& p = doc["problem"];
        check_keys(p, "problem", {"s", "T", "g", "m", "b", "u0", "u1", "forcing"},
                   issues);
        cfg.problem.s = get_number(p, "problem", "s", 1.0, issues, true);
        cfg.problem.horizon = get_number(p, "problem", "T", 1.0, issues, true);
        if (!(cfg.problem.s > 0.0)) issues.add("problem.s", "must be positive");
        if (!(cfg.problem.horizon > 0.0)) issues.add("problem.T", "must be positive");
        auto slot = [&](const char* key, FieldSource fallback) {
            if (!p.contains(key)) return fallback;
            return parse_source(p[key], std::string("problem.") + key, issues);
        };
        FieldSource one;
        one.kind = FieldSource::Kind::constant;
        one.value = 1.0;
        FieldSource zero;
        zero.kind = FieldSource::Kind::constant;
        zero.value = 0.0;
        cfg.problem.g = slot("g", one);
        cfg.problem.m = slot("m", zero);
        cfg.problem.b = slot("b", zero);
        cfg.problem.u0 = slot("u0", zero);
        cfg.problem.u1 = slot("u1", zero);
        if (p.contains("forcing")) {
            const json& f = p["forcing"];
            check_keys(f, "problem.forcing", {"zero", "profile", "spatial"}, issues);
            cfg.problem.forcing.zero =
                f.contains("zero") ? f["zero"].get<bool>() : !f.contains("spatial");
            if (!cfg.problem.forcing.zero) {
                if (f.contains("profile"))
                    cfg.problem.forcing.profile =
                        parse_profile(f["profile"], "problem.forcing.profile", issues);
                if (f.contains("spatial"))
                    cfg.problem.forcing.spatial =
                        parse_source(f["spatial"], "problem.forcing.spatial", issues);
                else
                    issues.add("problem.forcing.spatial", "required when not zero");
            }
        }
    } else {
        issues.add("problem", "required");
    }

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        check_keys(s, "solver", {"cfl_fraction", "dt_override", "snapshot_stride"},
                   issues);
        cfg.solver.cfl_fraction = get_number(s, "solver", "cfl_fraction", 0.5, issues);
        if (s.contains("dt_override"))
            cfg.solver.dt_override = get_number(s, "solver", "dt_override", 0.0, issues);
        cfg.solver.snapshot_stride = get_int(s, "solver", "snapshot_stride", 1, issues);
        if (!(cfg.solver.cfl_fraction > 0.0) || cfg.solver.cfl_fraction > 1.0)
            issues.add("solver.cfl_fraction", "must lie in (0, 1]");
        if (cfg.solver.snapshot_stride < 1)
            issues.add("solver.snapshot_stride", "must be >= 1");
    }

    if (doc.contains("params")) {
        const json& q = doc["params"];
        check_keys(q, "params",
                   {"ladder", "norm_selector", "kernel", "kernel_b", "reference",
                    "n_tau", "probe", "n_samples", "estimate", "resolutions",
                    "dump_fields"},
                   issues);
        if (q.contains("ladder")) {
            if (!q["ladder"].is_array()) {
                issues.add("params.ladder", "expected an array");
            } else {
                for (const auto& v : q["ladder"])
                    cfg.params.ladder.push_back(v.get<double>());
            }
        }
        const std::string sel = get_string(q, "params", "norm_selector", "norm1", issues);
        if (sel == "norm1") cfg.params.norm_selector = vws_lab::NormSelector::norm1;
        else if (sel == "norm2") cfg.params.norm_selector = vws_lab::NormSelector::norm2;
        else if (sel == "norm3") cfg.params.norm_selector = vws_lab::NormSelector::norm3;
        else issues.add("params.norm_selector", "must be norm1 | norm2 | norm3");
        cfg.params.kernel =
            parse_kernel(get_string(q, "params", "kernel", "compact_bump", issues),
                         "params.kernel", issues);
        cfg.params.kernel_b =
            parse_kernel(get_string(q, "params", "kernel_b", "gaussian", issues),
                         "params.kernel_b", issues);
        const std::string ref =
            get_string(q, "params", "reference", "fine_eps_refined", issues);
        if (ref == "fine_eps_refined")
            cfg.params.reference = vws_lab::CoherenceReport::ReferenceKind::fine_eps_refined;
        else if (ref == "analytic_modal")
            cfg.params.reference = vws_lab::CoherenceReport::ReferenceKind::analytic_modal;
        else
            issues.add("params.reference", "must be analytic_modal | fine_eps_refined");
        cfg.params.n_tau = get_int(q, "params", "n_tau", 0, issues);
        const std::string probe = get_string(q, "params", "probe", "sobolev", issues);
        if (probe == "sobolev") cfg.params.probe = ProbeKind::sobolev;
        else if (probe == "kato-ponce") cfg.params.probe = ProbeKind::kato_ponce;
        else if (probe == "energy-bound") cfg.params.probe = ProbeKind::energy_bound;
        else issues.add("params.probe", "must be sobolev | kato-ponce | energy-bound");
        cfg.params.n_samples = get_int(q, "params", "n_samples", 50, issues);
        if (cfg.params.n_samples < 1) issues.add("params.n_samples", "must be >= 1");
        const std::string est = get_string(q, "params", "estimate", "E1", issues);
        if (est == "E1") cfg.params.estimate = vws_lab::EnergyEstimate::e1;
        else if (est == "E2") cfg.params.estimate = vws_lab::EnergyEstimate::e2;
        else issues.add("params.estimate", "must be E1 | E2");
        if (q.contains("resolutions")) {
            if (!q["resolutions"].is_array()) {
                issues.add("params.resolutions", "expected an array");
            } else {
                for (const auto& v : q["resolutions"])
                    cfg.params.resolutions.push_back(v.get<int>());
            }
        }
        cfg.params.dump_fields =
            q.contains("dump_fields") && q["dump_fields"].get<bool>();
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer())
            issues.add("seed", "expected an integer");
        else
            cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    cfg.output_dir = get_string(doc, "config", "output_dir", "out", issues);

    // Cross-field checks that need the grid.
    if (issues.lines.empty()) {
        const Grid grid = make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.box_length);
        const double floor = mollify::kMinEpsilonCells * grid.spacing();
        for (std::size_t i = 0; i < cfg.params.ladder.size(); ++i) {
            const double eps = cfg.params.ladder[i];
            if (!(eps > 0.0) || eps > 1.0)
                issues.add("params.ladder[" + std::to_string(i) + "]",
                           "epsilon must lie in (0, 1]");
            else if (eps < floor)
                issues.add("params.ladder[" + std::to_string(i) + "]",
                           "epsilon " + io::format_double(eps) +
                               " below resolvable floor 4*dx = " +
                               io::format_double(floor));
            if (i > 0 && !(cfg.params.ladder[i] < cfg.params.ladder[i - 1]))
                issues.add("params.ladder[" + std::to_string(i) + "]",
                           "ladder must be strictly decreasing");
        }
        auto check_file = [&](const FieldSource& src, const std::string& path) {
            if (src.kind != FieldSource::Kind::file) return;
            const auto full = cfg.base_dir / src.path;
            if (!std::filesystem::exists(full))
                issues.add(path, "field file not found: " + full.string());
        };
        check_file(cfg.problem.g, "problem.g.path");
        check_file(cfg.problem.m, "problem.m.path");
        check_file(cfg.problem.b, "problem.b.path");
        check_file(cfg.problem.u0, "problem.u0.path");
        check_file(cfg.problem.u1, "problem.u1.path");
        if (!cfg.problem.forcing.zero && cfg.problem.forcing.spatial)
            check_file(*cfg.problem.forcing.spatial, "problem.forcing.spatial.path");
    }

    issues.raise_if_any();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.has_parent_path()
                                       ? path.parent_path()
                                       : std::filesystem::path("."));
}

std::string serialize(const RunConfig& cfg) {
    json doc;
    doc["experiment"] = to_string(cfg.experiment);
    doc["grid"] = {{"dim", cfg.grid.dim}, {"n", cfg.grid.n}, {"L", cfg.grid.box_length}};
    json problem;
    problem["s"] = cfg.problem.s;
    problem["T"] = cfg.problem.horizon;
    problem["g"] = source_to_json(cfg.problem.g);
    problem["m"] = source_to_json(cfg.problem.m);
    problem["b"] = source_to_json(cfg.problem.b);
    problem["u0"] = source_to_json(cfg.problem.u0);
    problem["u1"] = source_to_json(cfg.problem.u1);
    json forcing;
    forcing["zero"] = cfg.problem.forcing.zero;
    if (!cfg.problem.forcing.zero) {
        forcing["profile"] = profile_to_json(cfg.problem.forcing.profile);
        if (cfg.problem.forcing.spatial)
            forcing["spatial"] = source_to_json(*cfg.problem.forcing.spatial);
    }
    problem["forcing"] = forcing;
    doc["problem"] = problem;

    json solver;
    solver["cfl_fraction"] = cfg.solver.cfl_fraction;
    if (cfg.solver.dt_override) solver["dt_override"] = *cfg.solver.dt_override;
    solver["snapshot_stride"] = cfg.solver.snapshot_stride;
    doc["solver"] = solver;

    json params;
    if (!cfg.params.ladder.empty()) params["ladder"] = cfg.params.ladder;
    params["norm_selector"] =
        cfg.params.norm_selector == vws_lab::NormSelector::norm1   ? "norm1"
        : cfg.params.norm_selector == vws_lab::NormSelector::norm2 ? "norm2"
                                                                   : "norm3";
    params["kernel"] = kernel_name(cfg.params.kernel);
    params["kernel_b"] = kernel_name(cfg.params.kernel_b);
    params["reference"] =
        cfg.params.reference == vws_lab::CoherenceReport::ReferenceKind::analytic_modal
            ? "analytic_modal"
            : "fine_eps_refined";
    params["n_tau"] = cfg.params.n_tau;
    params["probe"] = cfg.params.probe == ProbeKind::sobolev      ? "sobolev"
                      : cfg.params.probe == ProbeKind::kato_ponce ? "kato-ponce"
                                                                  : "energy-bound";
    params["n_samples"] = cfg.params.n_samples;
    params["estimate"] = cfg.params.estimate == vws_lab::EnergyEstimate::e1 ? "E1" : "E2";
    if (!cfg.params.resolutions.empty()) params["resolutions"] = cfg.params.resolutions;
    params["dump_fields"] = cfg.params.dump_fields;
    doc["params"] = params;

    doc["seed"] = cfg.seed;
    doc["output_dir"] = cfg.output_dir.string();
    return doc.dump(2) + "\n";
}

Grid build_grid(const RunConfig& cfg) {
    return make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.box_length);
}

Field build_field(const FieldSource& src, const Grid& grid,
                  const std::filesystem::path& base_dir) {
    switch (src.kind) {
    case FieldSource::Kind::constant:
        return Field::constant(grid, src.value);
    case FieldSource::Kind::file: {
        Field f = io::read_field(base_dir / src.path);
        require_same_grid(f.grid, grid, "config field file");
        return f;
    }
    case FieldSource::Kind::singular: {
        if (!src.mollifier)
            throw ConfigError("singular field source needs a mollifier block");
        Field net = mollify::singular_net(src.datum, *src.mollifier, grid);
        if (src.offset != 0.0)
            for (double& v : net.samples) v += src.offset;
        return net;
    }
    case FieldSource::Kind::harmonic: {
        Field f = Field::zeros(grid);
        const int n = grid.points_per_axis;
        const double k0 = 2.0 * std::numbers::pi / grid.box_length;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int j0 = grid.dim == 2 ? static_cast<int>(i) / n : static_cast<int>(i);
            const int j1 = grid.dim == 2 ? static_cast<int>(i) % n : 0;
            double arg = src.mode[0] * k0 * grid.coordinate(j0) + src.phase;
            if (grid.dim == 2) arg += src.mode[1] * k0 * grid.coordinate(j1);
            f.samples[i] = src.amplitude * std::sin(arg);
        }
        return f;
    }
    }
    throw ConfigError("unknown field source kind");
}

evolve::ProblemSpec build_problem(const RunConfig& cfg) {
    const Grid grid = build_grid(cfg);
    evolve::ProblemSpec p;
    p.order.s = cfg.problem.s;
    p.horizon = cfg.problem.horizon;
    p.g = build_field(cfg.problem.g, grid, cfg.base_dir);
    p.m = build_field(cfg.problem.m, grid, cfg.base_dir);
    p.b = build_field(cfg.problem.b, grid, cfg.base_dir);
    p.u0 = build_field(cfg.problem.u0, grid, cfg.base_dir);
    p.u1 = build_field(cfg.problem.u1, grid, cfg.base_dir);
    if (cfg.problem.forcing.zero) {
        p.forcing = evolve::SourceTerm::zero();
    } else {
        p.forcing = evolve::SourceTerm::separable(
            cfg.problem.forcing.profile,
            build_field(*cfg.problem.forcing.spatial, grid, cfg.base_dir));
    }
    const bool any_singular =
        cfg.problem.g.kind == FieldSource::Kind::singular ||
        cfg.problem.m.kind == FieldSource::Kind::singular ||
        cfg.problem.b.kind == FieldSource::Kind::singular ||
        cfg.problem.u0.kind == FieldSource::Kind::singular ||
        cfg.problem.u1.kind == FieldSource::Kind::singular;
    p.provenance = any_singular ? evolve::CoefficientProvenance::regularized
                                : evolve::CoefficientProvenance::smooth;
    p.validate();
    return p;
}

vws_lab::ProblemTemplate build_template(const RunConfig& cfg) {
    const Grid grid = build_grid(cfg);
    vws_lab::ProblemTemplate tpl;
    tpl.order.s = cfg.problem.s;
    tpl.horizon = cfg.problem.horizon;
    tpl.grid = grid;
    tpl.kernel = cfg.params.kernel;

    auto to_slot = [&](const FieldSource& src) {
        if (src.kind == FieldSource::Kind::singular) {
            // smooth_reference is the catalog's smooth baseline: its profile
            // joins the per-eps regularization like any other smooth slot
            if (src.datum.kind == mollify::SingularKind::smooth_reference) {
                Field profile = build_field(src, grid, cfg.base_dir);
                return vws_lab::SlotSpec::smooth(std::move(profile));
            }
            return vws_lab::SlotSpec::singular(src.datum, src.offset);
        }
        Field base = build_field(src, grid, cfg.base_dir);
        // Constants are fixed points of the unit-mass convolution; keep them
        // fixed so g == 1 templates stay inside the uniqueness scope.
        if (src.kind == FieldSource::Kind::constant)
            return vws_lab::SlotSpec::fixed(std::move(base));
        return vws_lab::SlotSpec::smooth(std::move(base));
    };
    tpl.g = to_slot(cfg.problem.g);
    tpl.m = to_slot(cfg.problem.m);
    tpl.b = to_slot(cfg.problem.b);
    tpl.u0 = to_slot(cfg.problem.u0);
    tpl.u1 = to_slot(cfg.problem.u1);
    tpl.forcing.zero = cfg.problem.forcing.zero;
    if (!tpl.forcing.zero) {
        tpl.forcing.profile = cfg.problem.forcing.profile;
        tpl.forcing.spatial = to_slot(*cfg.problem.forcing.spatial);
    }
    return tpl;
}

evolve::SolverConfig build_solver(const RunConfig& cfg) {
    evolve::SolverConfig s;
    s.cfl_fraction = cfg.solver.cfl_fraction;
    s.dt_override = cfg.solver.dt_override;
    s.snapshot_stride = cfg.solver.snapshot_stride;
    return s;
}

} // namespace fracwave::config
