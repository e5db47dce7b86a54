#pragma once
#include <cmath>
#include <stdexcept>

#include "shadowlab/box.hpp"
#include "shadowlab/vec2.hpp"

namespace shadowlab::md {

// Truncated, infinitely smooth Lennard-Jones pair potential
//   V(r) = s * (1/r^12 - 1/r^6) * exp(1/(r - r_cutoff))   for r < r_cutoff,
//   V(r) = 0                                              otherwise.
// The exponential factor and all its derivatives vanish as r -> r_cutoff, so
// the truncation is C-infinity.
struct PotentialSpec {
    double r_cutoff{2.5};
    double well_depth_scale{4.0};
};

inline constexpr double kLjMinimumR = 1.122462048309373;  // 2^(1/6)

inline void validate(const PotentialSpec& pot) {
    if (!(pot.r_cutoff > kLjMinimumR))
        throw std::invalid_argument("r_cutoff must exceed the LJ minimum 2^(1/6)");
    if (!(pot.well_depth_scale > 0.0))
        throw std::invalid_argument("well_depth_scale must be positive");
}

// The box must be wide enough that minimum-image pair interactions are
// unambiguous: side > 2 * r_cutoff.
inline void validate_geometry(const BoxSpec& box, const PotentialSpec& pot) {
    validate(box);
    validate(pot);
    if (!(box.side > 2.0 * pot.r_cutoff))
        throw std::invalid_argument("box side must exceed twice the cutoff radius");
}

inline double lj_potential(double r, const PotentialSpec& pot) {
    if (!(r > 0.0)) throw std::invalid_argument("invalid separation: r must be positive");
    if (r >= pot.r_cutoff) return 0.0;
    const double inv_r2 = 1.0 / (r * r);
    const double inv_r6 = inv_r2 * inv_r2 * inv_r2;
    return pot.well_depth_scale * (inv_r6 * inv_r6 - inv_r6) * std::exp(1.0 / (r - pot.r_cutoff));
}

// dV/dr, including the derivative of the exponential smoothing factor.
inline double lj_potential_derivative(double r, const PotentialSpec& pot) {
    if (!(r > 0.0)) throw std::invalid_argument("invalid separation: r must be positive");
    if (r >= pot.r_cutoff) return 0.0;
    const double inv_r = 1.0 / r;
    const double inv_r2 = inv_r * inv_r;
    const double inv_r6 = inv_r2 * inv_r2 * inv_r2;
    const double inv_r12 = inv_r6 * inv_r6;
    const double u = 1.0 / (r - pot.r_cutoff);
    const double smooth = std::exp(u);
    const double a = pot.well_depth_scale * (inv_r12 - inv_r6);
    const double da = pot.well_depth_scale * (-12.0 * inv_r12 + 6.0 * inv_r6) * inv_r;
    return da * smooth - a * smooth * u * u;
}

// Force on particle i due to particle j, where delta is the minimum-image
// displacement q_i - q_j. Antisymmetric under delta -> -delta; zero at or
// beyond the cutoff.
inline Vec2 lj_force_pair(const Vec2& delta, const PotentialSpec& pot) {
    const double r2 = norm2(delta);
    if (r2 == 0.0) throw std::invalid_argument("particle overlap: zero separation");
    if (r2 >= pot.r_cutoff * pot.r_cutoff) return {0.0, 0.0};
    const double r = std::sqrt(r2);
    const double scale = -lj_potential_derivative(r, pot) / r;
    return {scale * delta.x, scale * delta.y};
}

} // namespace shadowlab::md
