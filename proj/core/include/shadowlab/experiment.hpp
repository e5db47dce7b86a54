#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shadowlab/functionals.hpp"
#include "shadowlab/pipeline.hpp"
#include "shadowlab/sampler.hpp"

namespace shadowlab::experiments {

enum class ExperimentId : int {
    exp1 = 1,  // sample trajectories, one CSV per seed
    exp2 = 2,  // step-size divergence from one shared initial condition
    exp3 = 3,  // equilibrium functional histograms plus Brownian reference
    exp4 = 4,  // non-equilibrium (kicked) functional histograms
    exp5 = 5,  // shadow-coupling pipeline
};

enum class Preset { paper, desk };

struct ExperimentConfig {
    ExperimentId id{ExperimentId::exp3};
    std::size_t n_particles{100};
    double box_side{11.5};
    double beta{1.0};
    std::vector<double> dt_list{0.01, 0.005, 0.0025};
    double horizon{100.0};
    std::size_t ensemble{200};
    std::size_t kick_index{0};
    Vec2 kick{10.0, 0.0};
    std::vector<paths::FunctionalSpec> functionals;
    std::uint64_t seed{0};
    std::filesystem::path out_dir{"out"};
    // thermostat
    double gamma{1.0};
    double langevin_dt{0.01};
    std::size_t burn_in_steps{100000};
    // exp5
    std::size_t shadow_paths{64};
    double dt_ref{0.001};
    double epsilon{0.05};
    bool epsilon_auto{false};
    // execution
    int threads{0};
    std::size_t hist_bins{40};

    md::BoxSpec box() const { return {box_side}; }
};

// Paper-default configuration for one experiment (n = 100, 11.5 box,
// beta = 1, dt in {0.01, 0.005, 0.0025}).
ExperimentConfig default_config(ExperimentId id);

// Desk-scale preset: n = 16 in a 5.75 box (exp5: 2 particles), ensemble 200.
// CI-runnable stand-in for the paper-scale configuration.
ExperimentConfig preset_config(Preset preset, ExperimentId id);

// Parses the flat key-value config document (one "key = value" per line,
// '#' comments) on top of the paper defaults, then validates. Throws
// ConfigError with the offending line or the violated constraint.
ExperimentConfig validate_config(const std::string& raw_text);
ExperimentConfig validate_config(const std::string& raw_text, const ExperimentConfig& base);

struct ManifestEntry {
    std::string path;   // relative to out_dir
    std::uint64_t bytes{0};
    std::string fnv1a64;
};

struct Manifest {
    std::vector<ManifestEntry> files;  // sorted by path

    std::string to_json_string() const;
};

// Runs the configured experiment, writes its outputs plus manifest.json under
// config.out_dir, and returns the manifest. Reproducible bit-for-bit from the
// master seed.
Manifest run_experiment(const ExperimentConfig& config);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace shadowlab::experiments
