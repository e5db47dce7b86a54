#pragma once
#include <cmath>
#include <stdexcept>

#include "shadowlab/vec2.hpp"

namespace shadowlab::md {

// Square periodic simulation box (2-D torus) of the given side length.
struct BoxSpec {
    double side{11.5};
};

inline void validate(const BoxSpec& box) {
    if (!(box.side > 0.0)) throw std::invalid_argument("box side must be positive");
}

// Lattice representative of a scalar offset with value in [-side/2, side/2).
inline double min_image_scalar(double d, double side) {
    return d - side * std::floor(d / side + 0.5);
}

// Minimum-image convention: representative of delta modulo the box lattice
// with each component in [-side/2, side/2).
inline Vec2 min_image(const Vec2& delta, const BoxSpec& box) {
    return {min_image_scalar(delta.x, box.side), min_image_scalar(delta.y, box.side)};
}

inline double wrap_scalar(double x, double side) {
    double w = x - side * std::floor(x / side);
    if (w >= side) w -= side;  // floor rounding can leave w == side
    if (w < 0.0) w += side;
    return w;
}

// Wraps a position into the primary cell [0, side)^2.
inline Vec2 wrap_position(const Vec2& q, const BoxSpec& box) {
    return {wrap_scalar(q.x, box.side), wrap_scalar(q.y, box.side)};
}

} // namespace shadowlab::md
