#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "shadowlab/vec2.hpp"

namespace shadowlab::paths {

// Piecewise-linear continuous path in R^2 on a uniform time grid starting at
// t = 0. Grid node k sits at time k * dt_grid; between nodes the path is the
// linear interpolant, so a PathPL is a genuine element of (C[0,T])^2 with
// T = (size() - 1) * dt_grid.
struct PathPL {
    double dt_grid{0.0};
    std::vector<Vec2> values;

    std::size_t size() const { return values.size(); }
    double horizon() const { return (static_cast<double>(size()) - 1.0) * dt_grid; }

    // Exact linear interpolation at time t in [0, horizon()].
    Vec2 at(double t) const;
};

void validate(const PathPL& path);

// Exact refinement of a path onto a grid finer by the integer factor `ratio`.
// The refined path has the same graph: piecewise-linear resampling onto a
// subdividing grid loses nothing.
PathPL refine(const PathPL& path, std::size_t ratio);

// sup_t |a(t) - b(t)| over the common horizon. For same-grid piecewise-linear
// paths the per-segment supremum of the Euclidean norm of a linear vector
// function is attained at a segment endpoint, so the node-wise maximum is
// exact. Paths on different grids are first refined onto the common grid,
// which requires equal horizons and an integer grid ratio.
double sup_distance(const PathPL& a, const PathPL& b);

} // namespace shadowlab::paths
