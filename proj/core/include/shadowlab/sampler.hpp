#pragma once
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "shadowlab/engine.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab::md {

// Langevin thermostat parameters targeting the canonical density
// exp(-beta H). The normalization constant is never needed: the sampler draws
// by running ergodic dynamics.
struct ThermostatSpec {
    double beta{1.0};
    double gamma{1.0};
    double langevin_dt{0.01};
    std::size_t burn_in_steps{100000};
    std::uint64_t seed{0};
};

inline void validate(const ThermostatSpec& t) {
    if (!(t.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(t.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(t.langevin_dt > 0.0)) throw std::invalid_argument("langevin_dt must be positive");
    if (t.burn_in_steps < 1) throw std::invalid_argument("burn_in_steps must be at least 1");
}

// One BAOAB step: half kick, half drift, exact Ornstein-Uhlenbeck momentum
// refresh, half drift, half kick. gamma = 0 together with noise = nullptr
// degenerates to one velocity-Verlet step (exposed for testing). The force at
// the final positions is returned through force_cache so consecutive steps
// evaluate one force per step.
SystemState langevin_baoab_step(const SystemState& state, double dt, double gamma, double beta,
                                const BoxSpec& box, const PotentialSpec& pot, Rng* noise,
                                ForceField* force_cache = nullptr);

// Draws a state approximately distributed per exp(-beta H): particles start
// on a jittered square lattice with Gaussian momenta and are evolved through
// thermo.burn_in_steps BAOAB steps. Deterministic given thermo.seed.
SystemState sample_canonical(const BoxSpec& box, const PotentialSpec& pot, std::size_t n,
                             const ThermostatSpec& thermo);

// Subtracts the mean velocity from every particle so the center of mass is at
// rest; positions unchanged.
SystemState remove_com_velocity(const SystemState& state);

// Adds dv to the momentum of one particle.
SystemState kick_particle(const SystemState& state, std::size_t index, const Vec2& dv);

} // namespace shadowlab::md
