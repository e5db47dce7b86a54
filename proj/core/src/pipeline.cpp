#include "shadowlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/functionals.hpp"
#include "shadowlab/parallel.hpp"
#include "shadowlab/prokhorov.hpp"

namespace shadowlab::shadow {

paths::PathPL displacement_path(const md::SystemState& start, double dt, std::size_t num_steps,
                                const md::BoxSpec& box, const md::PotentialSpec& pot,
                                std::size_t particle) {
    if (particle >= start.size()) throw std::out_of_range("particle index out of range");
    paths::PathPL path;
    path.dt_grid = dt;
    path.values.resize(num_steps + 1);
    path.values[0] = {0.0, 0.0};
    md::SystemState state = start;
    Vec2 acc{0.0, 0.0};
    for (std::size_t step = 1; step <= num_steps; ++step) {
        acc += state.p[particle] * dt;
        path.values[step] = acc;
        try {
            state = md::verlet_step(state, dt, box, pot);
        } catch (const InstabilityError&) {
            throw InstabilityError("trajectory blew up", step);
        }
    }
    // One more momentum record is not needed: node k holds dt * sum_{i<k} p_i.
    return path;
}

double auto_epsilon(std::size_t n) {
    if (n < 1) throw std::invalid_argument("auto_epsilon needs a nonempty sample");
    double eps = 1.0;
    while (eps / 2.0 >= 1.0 / static_cast<double>(n)) eps /= 2.0;
    return eps;
}

namespace {

std::size_t step_count(double horizon, double dt) {
    const double steps_real = horizon / dt;
    const auto steps = static_cast<std::size_t>(std::round(steps_real));
    if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real)
        throw ConfigError("horizon must be a positive multiple of dt");
    return steps;
}

} // namespace

ShadowDiagnostic shadow_md_pipeline(const PipelineConfig& config) {
    if (config.n_paths < 1) throw ConfigError("pipeline needs at least one path");
    const std::size_t coarse_steps = step_count(config.horizon, config.dt);
    const std::size_t fine_steps = step_count(config.horizon, config.dt_ref);

    std::vector<paths::PathPL> numerical(config.n_paths);
    std::vector<paths::PathPL> surrogate(config.n_paths);
    parallel_for(config.n_paths, config.threads, [&](std::size_t i) {
        md::ThermostatSpec thermo;
        thermo.beta = config.beta;
        thermo.gamma = config.gamma;
        thermo.langevin_dt = config.langevin_dt;
        thermo.burn_in_steps = config.burn_in_steps;
        thermo.seed = derive_stream(config.master_seed, 1, i);
        md::SystemState start = md::sample_canonical(config.box, config.potential,
                                                     config.n_particles, thermo);
        start = md::remove_com_velocity(start);
        numerical[i] = displacement_path(start, config.dt, coarse_steps, config.box,
                                         config.potential, config.particle);
        surrogate[i] = displacement_path(start, config.dt_ref, fine_steps, config.box,
                                         config.potential, config.particle);
    });

    const auto dist_xy = metrics::pairwise_distances(std::span<const paths::PathPL>(numerical),
                                                     std::span<const paths::PathPL>(surrogate));
    const auto dist_xx = metrics::pairwise_distances(std::span<const paths::PathPL>(numerical),
                                                     std::span<const paths::PathPL>(numerical));
    const auto dist_yy = metrics::pairwise_distances(std::span<const paths::PathPL>(surrogate),
                                                     std::span<const paths::PathPL>(surrogate));

    const double alpha = metrics::prokhorov_empirical(dist_xy).value;
    const double epsilon = config.epsilon_auto ? auto_epsilon(config.n_paths) : config.epsilon;

    const CouplingMap map = build_shadow_map_from_distances(
        dist_xx, feature_sort_keys(std::span<const paths::PathPL>(numerical)), dist_yy,
        feature_sort_keys(std::span<const paths::PathPL>(surrogate)), dist_xy, epsilon, alpha);

    ShadowDiagnostic diag;
    diag.alpha = alpha;
    diag.epsilon = epsilon;
    diag.delta = map.delta;
    diag.k_slack = map.k_slack;
    diag.n_cells = map.n_cells;
    diag.beta_used = alpha + 3.0 * epsilon;
    const WeakShadowingReport report = verify_weak_shadowing(map, diag.beta_used);
    diag.exceedance_at_beta = report.exceedance;
    diag.pass = report.pass;

    std::vector<double> betas = map.per_pair_distance;
    betas.push_back(diag.beta_used);
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
    for (double beta : betas) diag.exceedance_curve.emplace_back(beta, map.exceedance(beta));

    for (std::size_t i = 0; i < map.assignment.size(); ++i)
        diag.matching.emplace_back(static_cast<int>(i), map.assignment[i],
                                   map.per_pair_distance[i]);
    return diag;
}

std::string ShadowDiagnostic::to_json_string() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    j["k"] = k_slack;
    j["n_cells"] = n_cells;
    j["beta_used"] = beta_used;
    j["exceedance_at_beta"] = exceedance_at_beta;
    j["pass"] = pass;
    auto& curve = j["exceedance_curve"] = nlohmann::json::array();
    for (const auto& [beta, frac] : exceedance_curve) curve.push_back({beta, frac});
    auto& match = j["matching"] = nlohmann::json::array();
    for (const auto& [i, t, dist] : matching) match.push_back({i, t, dist});
    return j.dump(2);
}

} // namespace shadowlab::shadow
