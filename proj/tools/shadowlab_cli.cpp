// Command-line driver for the experiment suites. One subcommand per
// experiment; each reads an optional flat key-value config file, applies the
// desk or paper preset, and writes plot-ready CSV/JSON outputs plus a
// manifest with content hashes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/experiment.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitInstability = 3;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool threads_set = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Key-value config file (one key = value per line)");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--preset", flags.preset, "Configuration preset")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--seed", flags.seed, "Master seed")->each([&](const std::string&) {
        flags.seed_set = true;
    });
    cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware)")
        ->each([&](const std::string&) { flags.threads_set = true; });
}

int run(shadowlab::experiments::ExperimentId id, const CommonFlags& flags) {
    using namespace shadowlab::experiments;
    std::string raw;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << flags.config_path << "\n";
            return kExitConfigError;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        raw = ss.str();
    }

    ExperimentConfig base = flags.preset == "desk" ? preset_config(Preset::desk, id)
                                                   : preset_config(Preset::paper, id);
    ExperimentConfig cfg;
    try {
        cfg = validate_config(raw, base);
    } catch (const shadowlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    if (cfg.id != id) {
        std::cerr << "config error: config file selects a different experiment than the subcommand\n";
        return kExitConfigError;
    }
    if (flags.seed_set) cfg.seed = flags.seed;
    if (flags.threads_set) cfg.threads = flags.threads;
    if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;

    try {
        const Manifest manifest = run_experiment(cfg);
        std::cout << "wrote " << manifest.files.size() << " files to " << cfg.out_dir.string()
                  << " (see manifest.json)\n";
    } catch (const shadowlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const shadowlab::InstabilityError& e) {
        std::cerr << "numerical instability: " << e.what() << "\n";
        return kExitInstability;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D Lennard-Jones lab: trajectories, functional histograms, and shadow couplings"};
    app.require_subcommand(1);

    using shadowlab::experiments::ExperimentId;
    struct Entry {
        ExperimentId id;
        const char* name;
        const char* help;
    };
    const Entry entries[] = {
        {ExperimentId::exp1, "exp1", "Sample single-particle trajectories (one CSV per seed)"},
        {ExperimentId::exp2, "exp2", "Step-size divergence from one shared initial condition"},
        {ExperimentId::exp3, "exp3", "Equilibrium functional histograms plus Brownian reference"},
        {ExperimentId::exp4, "exp4", "Non-equilibrium (kicked) functional histograms"},
        {ExperimentId::exp5, "exp5", "Shadow-coupling pipeline diagnostic"},
    };

    CommonFlags flags[5];
    for (std::size_t i = 0; i < 5; ++i) {
        CLI::App* cmd = app.add_subcommand(entries[i].name, entries[i].help);
        add_common_flags(cmd, flags[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < 5; ++i) {
        if (app.get_subcommand(entries[i].name)->parsed()) return run(entries[i].id, flags[i]);
    }
    return kExitConfigError;
}
