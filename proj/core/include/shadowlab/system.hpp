#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "shadowlab/box.hpp"
#include "shadowlab/vec2.hpp"

namespace shadowlab::md {

// Positions (wrapped into [0, side)^2) and momenta of n unit-mass particles
// at one instant. Momenta and velocities coincide because all masses are 1.
struct SystemState {
    std::vector<Vec2> q;
    std::vector<Vec2> p;

    std::size_t size() const { return q.size(); }
};

// Per-particle forces, -dH/dq evaluated at the state's positions.
struct ForceField {
    std::vector<Vec2> f;

    std::size_t size() const { return f.size(); }
};

inline void validate(const SystemState& state) {
    if (state.q.size() != state.p.size())
        throw std::invalid_argument("state: q and p must have the same length");
    if (state.q.empty()) throw std::invalid_argument("state: no particles");
}

inline bool all_finite(const SystemState& state) {
    for (const auto& v : state.q)
        if (!is_finite(v)) return false;
    for (const auto& v : state.p)
        if (!is_finite(v)) return false;
    return true;
}

} // namespace shadowlab::md
