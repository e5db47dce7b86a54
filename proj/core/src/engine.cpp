#include "shadowlab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "shadowlab/errors.hpp"

namespace shadowlab::md {

namespace {

// Accumulates the force on particle i from the candidate neighbor indices,
// which must already be in ascending order. Pairs at or beyond the cutoff are
// skipped, not added as zero, so the float operation sequence matches the
// naive loop exactly.
Vec2 force_on_particle(const SystemState& state, std::size_t i, const std::vector<std::size_t>& neighbors,
                       const BoxSpec& box, const PotentialSpec& pot) {
    const double rc2 = pot.r_cutoff * pot.r_cutoff;
    Vec2 fi{0.0, 0.0};
    for (std::size_t j : neighbors) {
        if (j == i) continue;
        const Vec2 delta = min_image(state.q[i] - state.q[j], box);
        const double r2 = norm2(delta);
        if (r2 == 0.0) throw std::invalid_argument("particle overlap: zero separation");
        if (r2 >= rc2) continue;
        const double r = std::sqrt(r2);
        const double scale = -lj_potential_derivative(r, pot) / r;
        fi.x += scale * delta.x;
        fi.y += scale * delta.y;
    }
    return fi;
}

struct CellList {
    int ncell;
    double edge;
    std::vector<std::vector<std::size_t>> members;  // ascending within each cell

    int cell_of(double coord) const {
        int c = static_cast<int>(std::floor(coord / edge));
        if (c < 0) c = 0;
        if (c >= ncell) c = ncell - 1;
        return c;
    }
};

CellList build_cell_list(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot) {
    CellList cl;
    cl.ncell = std::max(1, static_cast<int>(std::floor(box.side / pot.r_cutoff)));
    cl.edge = box.side / cl.ncell;
    cl.members.assign(static_cast<std::size_t>(cl.ncell) * cl.ncell, {});
    for (std::size_t i = 0; i < state.size(); ++i) {
        const int cx = cl.cell_of(state.q[i].x);
        const int cy = cl.cell_of(state.q[i].y);
        cl.members[static_cast<std::size_t>(cy) * cl.ncell + cx].push_back(i);
    }
    return cl;
}

} // namespace

ForceField compute_forces_naive(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot) {
    validate(state);
    validate_geometry(box, pot);
    const std::size_t n = state.size();
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    ForceField out;
    out.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.f[i] = force_on_particle(state, i, all, box, pot);
    return out;
}

ForceField compute_forces(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot) {
    validate(state);
    validate_geometry(box, pot);
    const std::size_t n = state.size();
    const CellList cl = build_cell_list(state, box, pot);

    ForceField out;
    out.f.resize(n);
    std::vector<std::size_t> candidates;
    std::vector<std::size_t> cells_seen;
    // Ascending cell index, ascending particle index within each cell.
    for (int cy = 0; cy < cl.ncell; ++cy) {
        for (int cx = 0; cx < cl.ncell; ++cx) {
            const auto& home = cl.members[static_cast<std::size_t>(cy) * cl.ncell + cx];
            if (home.empty()) continue;
            // With fewer than 3 cells per axis the wrapped 3x3 neighborhood
            // revisits cells; deduplicate.
            cells_seen.clear();
            candidates.clear();
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = (cx + dx + cl.ncell) % cl.ncell;
                    const int ny = (cy + dy + cl.ncell) % cl.ncell;
                    const std::size_t idx = static_cast<std::size_t>(ny) * cl.ncell + nx;
                    if (std::find(cells_seen.begin(), cells_seen.end(), idx) != cells_seen.end()) continue;
                    cells_seen.push_back(idx);
                    candidates.insert(candidates.end(), cl.members[idx].begin(), cl.members[idx].end());
                }
            }
            std::sort(candidates.begin(), candidates.end());
            for (std::size_t i : home) out.f[i] = force_on_particle(state, i, candidates, box, pot);
        }
    }
    return out;
}

double total_energy(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot) {
    validate(state);
    validate_geometry(box, pot);
    const std::size_t n = state.size();
    double kinetic = 0.0;
    for (const auto& p : state.p) kinetic += 0.5 * norm2(p);
    double potential = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 delta = min_image(state.q[i] - state.q[j], box);
            const double r = norm(delta);
            if (r >= pot.r_cutoff) continue;
            potential += lj_potential(r, pot);
        }
    }
    return kinetic + potential;
}

SystemState verlet_step(const SystemState& state, double dt, const BoxSpec& box, const PotentialSpec& pot) {
    validate(state);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const std::size_t n = state.size();
    SystemState next;
    next.q.resize(n);
    next.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) next.q[i] = state.q[i] + state.p[i] * (dt / 2.0);
    const ForceField field = compute_forces(next, box, pot);
    for (std::size_t i = 0; i < n; ++i) {
        next.p[i] = state.p[i] + field.f[i] * dt;
        next.q[i] = wrap_position(next.q[i] + next.p[i] * (dt / 2.0), box);
    }
    if (!all_finite(next)) throw InstabilityError("non-finite state after Verlet step", 0);
    return next;
}

std::vector<SystemState> integrate(const SystemState& state, double dt, std::size_t num_steps,
                                   const BoxSpec& box, const PotentialSpec& pot,
                                   std::size_t record_stride) {
    if (num_steps < 1) throw std::invalid_argument("num_steps must be at least 1");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be at least 1");
    std::vector<SystemState> record;
    record.reserve(num_steps / record_stride + 1);
    record.push_back(state);
    SystemState current = state;
    for (std::size_t step = 1; step <= num_steps; ++step) {
        try {
            current = verlet_step(current, dt, box, pot);
        } catch (const InstabilityError&) {
            throw InstabilityError("integration blew up", step);
        }
        if (step % record_stride == 0) record.push_back(current);
    }
    return record;
}

} // namespace shadowlab::md
