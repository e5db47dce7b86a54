#pragma once
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shadowlab/sampler.hpp"
#include "shadowlab/shadow_map.hpp"

namespace shadowlab::shadow {

// End-to-end experiment: draw N initial conditions from the canonical
// distribution, integrate each at the working step dt and at the reference
// step dt_ref, extract the single-particle displacement paths, and couple the
// two path ensembles.
struct PipelineConfig {
    std::size_t n_particles{2};
    md::BoxSpec box{5.75};
    md::PotentialSpec potential{};
    double beta{1.0};
    double gamma{1.0};
    double langevin_dt{0.01};
    std::size_t burn_in_steps{100000};
    std::size_t n_paths{64};
    double horizon{5.0};
    double dt{0.01};
    double dt_ref{0.001};
    std::size_t particle{0};
    double epsilon{0.05};
    bool epsilon_auto{false};
    std::uint64_t master_seed{0};
    int threads{0};
};

struct ShadowDiagnostic {
    double alpha{0.0};
    double epsilon{0.0};
    double delta{0.0};
    std::size_t k_slack{0};
    std::size_t n_cells{0};
    double beta_used{0.0};
    double exceedance_at_beta{0.0};
    bool pass{false};
    std::vector<std::pair<double, double>> exceedance_curve;      // (beta, fraction)
    std::vector<std::tuple<int, int, double>> matching;           // (i, j, distance)

    std::string to_json_string() const;
};

// Integrates one state at fixed dt and returns the unwrapped displacement
// path of the given particle (one momentum record per step).
paths::PathPL displacement_path(const md::SystemState& start, double dt, std::size_t num_steps,
                                const md::BoxSpec& box, const md::PotentialSpec& pot,
                                std::size_t particle);

// Smallest epsilon of the form 2^-j compatible with the partition guarantee
// delta <= epsilon at sample size n (cells hold one point each).
double auto_epsilon(std::size_t n);

ShadowDiagnostic shadow_md_pipeline(const PipelineConfig& config);

} // namespace shadowlab::shadow
