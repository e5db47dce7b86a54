#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "shadowlab/path.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab::paths {

enum class Functional : int { F1 = 1, F2 = 2, F3 = 3, F4 = 4, F5 = 5 };

// F5 compares the path increments over the two windows of length tau ending
// at the horizon, so it needs horizon >= 2 tau.
struct FunctionalSpec {
    Functional id{Functional::F1};
    double tau{0.1};
};

const char* functional_name(Functional id);

// Unwrapped single-particle displacement: the piecewise-linear path through
//   Q^k = dt * sum_{i<k} p_particle(state_i),   Q^0 = 0,
// the left-endpoint Riemann sum of the recorded momenta. The states must be
// uniformly spaced by dt.
PathPL unwrap_displacement(std::span<const md::SystemState> states, std::size_t particle, double dt);

// Evaluates one path functional:
//   F1  x-coordinate at the horizon
//   F2  (1/T) integral of Q_x(t) sin(2 pi t / T), exact per linear segment
//   F3  max_t |Q(t)|; each segment's |Q|^2 is convex so node maxima are exact
//   F4  first time |Q(t)| reaches 1, by per-segment root finding; T if never
//   F5  cosine of the angle between the last two tau-increments before T
// F5 with a zero increment throws DegenerateAngle.
double eval_functional(const FunctionalSpec& spec, const PathPL& path);

// 2-D Brownian path on the grid with independent Gaussian increments scaled
// so the per-component variance at the horizon equals target_variance_at_T.
// Deterministic given the seed.
PathPL brownian_reference(double target_variance_at_T, double horizon, double dt_grid,
                          std::uint64_t seed);

} // namespace shadowlab::paths
