#include "shadowlab/path.hpp"

#include <algorithm>
#include <cmath>

#include "shadowlab/errors.hpp"

namespace shadowlab::paths {

void validate(const PathPL& path) {
    if (path.size() < 2) throw std::invalid_argument("path needs at least 2 grid nodes");
    if (!(path.dt_grid > 0.0)) throw std::invalid_argument("path grid spacing must be positive");
    for (const auto& v : path.values)
        if (!is_finite(v)) throw std::invalid_argument("path has non-finite values");
}

Vec2 PathPL::at(double t) const {
    const double s = t / dt_grid;
    std::size_t k = static_cast<std::size_t>(std::max(0.0, std::floor(s)));
    if (k > size() - 2) k = size() - 2;
    const double theta = s - static_cast<double>(k);
    const Vec2& a = values[k];
    const Vec2& b = values[k + 1];
    return {a.x + theta * (b.x - a.x), a.y + theta * (b.y - a.y)};
}

PathPL refine(const PathPL& path, std::size_t ratio) {
    validate(path);
    if (ratio < 1) throw std::invalid_argument("refinement ratio must be at least 1");
    if (ratio == 1) return path;
    PathPL out;
    out.dt_grid = path.dt_grid / static_cast<double>(ratio);
    out.values.resize((path.size() - 1) * ratio + 1);
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const Vec2& a = path.values[seg];
        const Vec2& b = path.values[seg + 1];
        for (std::size_t j = 0; j < ratio; ++j) {
            const double theta = static_cast<double>(j) / static_cast<double>(ratio);
            out.values[seg * ratio + j] = {a.x + theta * (b.x - a.x), a.y + theta * (b.y - a.y)};
        }
    }
    out.values.back() = path.values.back();
    return out;
}

namespace {

double nodewise_sup(const PathPL& a, const PathPL& b) {
    double best = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, norm(a.values[k] - b.values[k]));
    return best;
}

// Integer grid ratio between two spacings, or 0 if there is none.
std::size_t grid_ratio(double coarse_dt, double fine_dt) {
    const double r = coarse_dt / fine_dt;
    const double rounded = std::round(r);
    if (rounded < 1.0 || std::abs(r - rounded) > 1e-9 * r) return 0;
    return static_cast<std::size_t>(rounded);
}

} // namespace

double sup_distance(const PathPL& a, const PathPL& b) {
    validate(a);
    validate(b);
    if (a.size() == b.size() && a.dt_grid == b.dt_grid) return nodewise_sup(a, b);
    if (std::abs(a.horizon() - b.horizon()) > 1e-9 * std::max(a.horizon(), b.horizon()))
        throw GridMismatch("sup_distance: paths have different horizons");
    if (a.dt_grid > b.dt_grid) {
        const std::size_t r = grid_ratio(a.dt_grid, b.dt_grid);
        if (r == 0 || (a.size() - 1) * r + 1 != b.size())
            throw GridMismatch("sup_distance: grids are not commensurate");
        return nodewise_sup(refine(a, r), b);
    }
    const std::size_t r = grid_ratio(b.dt_grid, a.dt_grid);
    if (r == 0 || (b.size() - 1) * r + 1 != a.size())
        throw GridMismatch("sup_distance: grids are not commensurate");
    return nodewise_sup(a, refine(b, r));
}

} // namespace shadowlab::paths
