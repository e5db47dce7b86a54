#include "shadowlab/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shadowlab/errors.hpp"
#include "shadowlab/rng.hpp"

namespace shadowlab::paths {

const char* functional_name(Functional id) {
    switch (id) {
        case Functional::F1: return "F1";
        case Functional::F2: return "F2";
        case Functional::F3: return "F3";
        case Functional::F4: return "F4";
        case Functional::F5: return "F5";
    }
    return "?";
}

PathPL unwrap_displacement(std::span<const md::SystemState> states, std::size_t particle, double dt) {
    if (states.size() < 2) throw std::invalid_argument("need at least 2 recorded states");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    PathPL path;
    path.dt_grid = dt;
    path.values.resize(states.size());
    path.values[0] = {0.0, 0.0};
    Vec2 acc{0.0, 0.0};
    for (std::size_t k = 1; k < states.size(); ++k) {
        const md::SystemState& prev = states[k - 1];
        if (particle >= prev.size()) throw std::out_of_range("particle index out of range");
        acc += prev.p[particle] * dt;
        path.values[k] = acc;
    }
    validate(path);
    return path;
}

namespace {

double eval_f2(const PathPL& path) {
    const double T = path.horizon();
    const double omega = 2.0 * std::numbers::pi / T;
    double integral = 0.0;
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const double t0 = static_cast<double>(seg) * path.dt_grid;
        const double h = path.dt_grid;
        const double a0 = path.values[seg].x;
        const double b = (path.values[seg + 1].x - path.values[seg].x) / h;
        const double s0 = std::sin(omega * t0), c0 = std::cos(omega * t0);
        const double c1 = std::cos(omega * (t0 + h));
        const double sh = std::sin(omega * h), ch = std::cos(omega * h);
        // integral of (a0 + b (t - t0)) sin(omega t) over the segment:
        const double const_part = a0 * (c0 - c1) / omega;
        const double ramp_part = s0 * ((ch - 1.0) / (omega * omega) + h * sh / omega) +
                                 c0 * (sh / (omega * omega) - h * ch / omega);
        integral += const_part + b * ramp_part;
    }
    return integral / T;
}

double eval_f3(const PathPL& path) {
    double best = 0.0;
    for (const auto& v : path.values) best = std::max(best, norm(v));
    return best;
}

double eval_f4(const PathPL& path) {
    const double T = path.horizon();
    if (norm2(path.values[0]) >= 1.0) return 0.0;
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        // |Q|^2 is convex on each segment, so the first crossing of level 1
        // happens on the first segment whose exit node is at or above it.
        if (norm2(path.values[seg + 1]) < 1.0) continue;
        const Vec2 A = path.values[seg];
        const Vec2 B = (path.values[seg + 1] - A) * (1.0 / path.dt_grid);
        const double a = norm2(B);
        const double bq = 2.0 * dot(A, B);
        const double c = norm2(A) - 1.0;  // negative: entry is inside
        double tau;
        if (a == 0.0) {
            tau = -c / bq;
        } else {
            const double disc = std::sqrt(bq * bq - 4.0 * a * c);
            tau = (bq <= 0.0) ? (-bq + disc) / (2.0 * a) : (-2.0 * c) / (bq + disc);
        }
        tau = std::min(std::max(tau, 0.0), path.dt_grid);
        return static_cast<double>(seg) * path.dt_grid + tau;
    }
    return T;
}

double eval_f5(const PathPL& path, double tau) {
    const double T = path.horizon();
    const Vec2 inc1 = path.at(T) - path.at(T - tau);
    const Vec2 inc2 = path.at(T - tau) - path.at(T - 2.0 * tau);
    const double n1 = norm(inc1), n2 = norm(inc2);
    if (n1 == 0.0 || n2 == 0.0)
        throw DegenerateAngle("F5: zero increment, angle undefined");
    return dot(inc1, inc2) / (n1 * n2);
}

} // namespace

double eval_functional(const FunctionalSpec& spec, const PathPL& path) {
    validate(path);
    switch (spec.id) {
        case Functional::F1: return path.values.back().x;
        case Functional::F2: return eval_f2(path);
        case Functional::F3: return eval_f3(path);
        case Functional::F4: return eval_f4(path);
        case Functional::F5:
            if (!(spec.tau > 0.0)) throw std::invalid_argument("F5 needs tau > 0");
            if (path.horizon() < 2.0 * spec.tau)
                throw std::invalid_argument("F5 needs horizon >= 2 tau");
            return eval_f5(path, spec.tau);
    }
    throw std::invalid_argument("unknown functional");
}

PathPL brownian_reference(double target_variance_at_T, double horizon, double dt_grid,
                          std::uint64_t seed) {
    if (!(target_variance_at_T > 0.0)) throw std::invalid_argument("target variance must be positive");
    if (!(dt_grid > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("need positive grid and horizon");
    const double steps_real = horizon / dt_grid;
    const auto steps = static_cast<std::size_t>(std::round(steps_real));
    if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real)
        throw std::invalid_argument("horizon must be a multiple of dt_grid");
    const double sigma = std::sqrt(target_variance_at_T / static_cast<double>(steps));
    Rng rng(seed);
    PathPL path;
    path.dt_grid = dt_grid;
    path.values.resize(steps + 1);
    path.values[0] = {0.0, 0.0};
    for (std::size_t k = 1; k <= steps; ++k) {
        path.values[k] = path.values[k - 1] +
                         Vec2{sigma * rng.next_gaussian(), sigma * rng.next_gaussian()};
    }
    return path;
}

} // namespace shadowlab::paths
