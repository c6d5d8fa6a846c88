// fracwave: pseudospectral lab for the damped fractional wave equation with
// regularized singular coefficients and data.
//
//   fracwave <experiment> --config <path> [--output-dir <path>] [--seed <int>]
//            [--threads <int>]
//
// Exit codes: 0 = all verdicts PASS, 1 = any FAIL, 2 = config / IO error.

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracwave/kernels.hpp"
#include "fracwave/runner.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string output_dir;
    long long seed = -1;
    int threads = 0;
};

int run_experiment(fracwave::config::Experiment experiment, const CliOptions& opt) {
    using namespace fracwave;

    std::ifstream in(opt.config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << opt.config_path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    config::RunConfig cfg;
    try {
        const std::filesystem::path path(opt.config_path);
        cfg = config::parse_config(bytes, path.has_parent_path() ? path.parent_path()
                                                                 : ".");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (cfg.experiment != experiment) {
        std::cerr << "error: config declares experiment '"
                  << config::to_string(cfg.experiment) << "' but the '"
                  << config::to_string(experiment) << "' subcommand was invoked\n";
        return 2;
    }
    if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);

    try {
        const runner::RunManifest manifest = runner::run(cfg, bytes);
        for (const auto& v : manifest.verdicts)
            std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << v.name << ": "
                      << v.detail << "\n";
        std::cout << "manifest: " << (cfg.output_dir / "manifest.json").string()
                  << "\n";
        return manifest.all_pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error (" << config::to_string(experiment) << "): " << e.what()
                  << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C"); // '.' decimal in every report

    CLI::App app{"pseudospectral very-weak-solution lab for the damped "
                 "fractional wave equation"};
    app.require_subcommand(1);

    CliOptions opt;
    if (const char* env = std::getenv("FRACWAVE_THREADS"))
        opt.threads = std::atoi(env);

    const std::vector<std::pair<std::string, fracwave::config::Experiment>> kinds = {
        {"solve", fracwave::config::Experiment::solve},
        {"sweep", fracwave::config::Experiment::sweep},
        {"twin", fracwave::config::Experiment::twin},
        {"coherence", fracwave::config::Experiment::coherence},
        {"duhamel-check", fracwave::config::Experiment::duhamel_check},
        {"probes", fracwave::config::Experiment::probes},
    };

    std::vector<std::pair<CLI::App*, fracwave::config::Experiment>> subs;
    for (const auto& [name, kind] : kinds) {
        CLI::App* sub = app.add_subcommand(name, name + " experiment");
        sub->add_option("--config", opt.config_path, "JSON run configuration")
            ->required();
        sub->add_option("--output-dir", opt.output_dir, "overrides config output_dir");
        sub->add_option("--seed", opt.seed, "overrides config seed");
        sub->add_option("--threads", opt.threads,
                        "worker threads (FRACWAVE_THREADS as fallback)");
        subs.emplace_back(sub, kind);
    }

    CLI11_PARSE(app, argc, argv);

    if (opt.threads > 0) fracwave::kernels::set_threads(opt.threads);

    for (const auto& [sub, kind] : subs)
        if (sub->parsed()) return run_experiment(kind, opt);
    return 2;
}
