#pragma once
#include <cmath>
#include <random>
#include <vector>

#include "shadowlab/box.hpp"
#include "shadowlab/system.hpp"

namespace test_helpers {

// Overlap-free random state: jittered square lattice positions with Gaussian
// momenta. Keeps pair energies moderate so integrator tests stay in the
// stable regime.
inline shadowlab::md::SystemState random_state(std::size_t n, const shadowlab::md::BoxSpec& box,
                                               std::mt19937_64& rng, double momentum_scale = 1.0) {
    shadowlab::md::SystemState s;
    s.q.resize(n);
    s.p.resize(n);
    const auto cells = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const double spacing = box.side / static_cast<double>(cells);
    std::uniform_real_distribution<double> jitter(-0.05 * spacing, 0.05 * spacing);
    std::normal_distribution<double> gauss(0.0, momentum_scale);
    for (std::size_t i = 0; i < n; ++i) {
        const double cx = (static_cast<double>(i % cells) + 0.5) * spacing;
        const double cy = (static_cast<double>(i / cells) + 0.5) * spacing;
        s.q[i] = shadowlab::md::wrap_position({cx + jitter(rng), cy + jitter(rng)}, box);
        s.p[i] = {gauss(rng), gauss(rng)};
    }
    return s;
}

// Fully uniform positions (overlaps allowed); used where only bit-identity of
// two code paths matters.
inline shadowlab::md::SystemState uniform_state(std::size_t n, const shadowlab::md::BoxSpec& box,
                                                std::mt19937_64& rng) {
    shadowlab::md::SystemState s;
    s.q.resize(n);
    s.p.resize(n);
    std::uniform_real_distribution<double> pos(0.0, box.side);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        s.q[i] = {pos(rng), pos(rng)};
        s.p[i] = {gauss(rng), gauss(rng)};
    }
    return s;
}

} // namespace test_helpers
