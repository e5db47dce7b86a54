#include "shadowlab/sampler.hpp"

#include <cmath>
#include <cstddef>

#include "shadowlab/errors.hpp"

namespace shadowlab::md {

SystemState langevin_baoab_step(const SystemState& state, double dt, double gamma, double beta,
                                const BoxSpec& box, const PotentialSpec& pot, Rng* noise,
                                ForceField* force_cache) {
    validate(state);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const std::size_t n = state.size();

    SystemState next = state;
    ForceField field = (force_cache && force_cache->size() == n) ? *force_cache
                                                                 : compute_forces(next, box, pot);
    // B
    for (std::size_t i = 0; i < n; ++i) next.p[i] += field.f[i] * (dt / 2.0);
    // A
    for (std::size_t i = 0; i < n; ++i) next.q[i] = wrap_position(next.q[i] + next.p[i] * (dt / 2.0), box);
    // O: exact OU refresh, p -> c1 p + c2 xi with xi standard normal.
    const double c1 = std::exp(-gamma * dt);
    const double c2 = std::sqrt((1.0 - c1 * c1) / beta);
    for (std::size_t i = 0; i < n; ++i) {
        const double gx = noise ? noise->next_gaussian() : 0.0;
        const double gy = noise ? noise->next_gaussian() : 0.0;
        next.p[i] = {c1 * next.p[i].x + c2 * gx, c1 * next.p[i].y + c2 * gy};
    }
    // A
    for (std::size_t i = 0; i < n; ++i) next.q[i] = wrap_position(next.q[i] + next.p[i] * (dt / 2.0), box);
    // B
    field = compute_forces(next, box, pot);
    for (std::size_t i = 0; i < n; ++i) next.p[i] += field.f[i] * (dt / 2.0);
    if (force_cache) *force_cache = field;
    return next;
}

namespace {

// Jittered square lattice with Gaussian momenta: overlap-free start so the
// burn-in never begins from a near-singular pair energy.
SystemState lattice_start(const BoxSpec& box, std::size_t n, double beta, Rng& rng) {
    SystemState state;
    state.q.resize(n);
    state.p.resize(n);
    const std::size_t cells = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const double spacing = box.side / static_cast<double>(cells);
    const double jitter = 0.05 * spacing;
    const double sigma = std::sqrt(1.0 / beta);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t row = i / cells;
        const std::size_t col = i % cells;
        const Vec2 base{(static_cast<double>(col) + 0.5) * spacing,
                        (static_cast<double>(row) + 0.5) * spacing};
        const Vec2 q{base.x + rng.uniform(-jitter, jitter), base.y + rng.uniform(-jitter, jitter)};
        state.q[i] = wrap_position(q, box);
        state.p[i] = {sigma * rng.next_gaussian(), sigma * rng.next_gaussian()};
    }
    return state;
}

} // namespace

SystemState sample_canonical(const BoxSpec& box, const PotentialSpec& pot, std::size_t n,
                             const ThermostatSpec& thermo) {
    if (n < 2) throw std::invalid_argument("sample_canonical requires n >= 2");
    validate(thermo);
    validate_geometry(box, pot);
    Rng rng(thermo.seed);
    SystemState state = lattice_start(box, n, thermo.beta, rng);
    ForceField cache = compute_forces(state, box, pot);
    for (std::size_t step = 0; step < thermo.burn_in_steps; ++step) {
        state = langevin_baoab_step(state, thermo.langevin_dt, thermo.gamma, thermo.beta, box, pot,
                                    &rng, &cache);
        if (!all_finite(state))
            throw InstabilityError("thermostat instability during burn-in (reduce langevin_dt)", step);
    }
    return state;
}

SystemState remove_com_velocity(const SystemState& state) {
    validate(state);
    const std::size_t n = state.size();
    Vec2 total{0.0, 0.0};
    for (const auto& p : state.p) total += p;
    const Vec2 mean = total * (1.0 / static_cast<double>(n));
    SystemState out = state;
    for (auto& p : out.p) p -= mean;
    return out;
}

SystemState kick_particle(const SystemState& state, std::size_t index, const Vec2& dv) {
    validate(state);
    if (index >= state.size()) throw std::out_of_range("kick_particle: index out of range");
    SystemState out = state;
    out.p[index] += dv;
    return out;
}

} // namespace shadowlab::md
