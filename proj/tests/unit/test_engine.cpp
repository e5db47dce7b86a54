#include <doctest.h>

#include <cmath>
#include <random>

#include "shadowlab/engine.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/potential.hpp"
#include "test_helpers.hpp"

using namespace shadowlab;
using namespace shadowlab::md;

namespace {

const BoxSpec kBox{11.5};
const PotentialSpec kPot{};

double max_force(const ForceField& f) {
    double m = 0.0;
    for (const auto& v : f.f) m = std::max(m, norm(v));
    return m;
}

} // namespace

TEST_CASE("min_image returns the representative in [-side/2, side/2)") {
    const Vec2 a = min_image({0.3, 0.0}, kBox);
    CHECK(a.x == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(a.y == 0.0);

    const Vec2 b = min_image({11.4, 0.0}, kBox);
    CHECK(b.x == doctest::Approx(-0.1).epsilon(1e-12));

    // Boundary convention at exactly side/2, checked against an exhaustive
    // lattice-shift search over offsets in {-1, 0, 1} * side.
    const Vec2 c = min_image({5.75, -5.75}, kBox);
    CHECK(c.x == -5.75);
    CHECK(c.y == -5.75);
    for (double component : {5.75, -5.75, 3.2, -4.9, 11.4}) {
        double best = component;
        for (int k : {-1, 0, 1}) {
            const double shifted = component + static_cast<double>(k) * kBox.side;
            if (shifted >= -kBox.side / 2 && shifted < kBox.side / 2) best = shifted;
        }
        CHECK(min_image_scalar(component, kBox.side) == doctest::Approx(best).epsilon(1e-14));
    }
}

TEST_CASE("lj potential vanishes at r = 1 and at the cutoff") {
    CHECK(lj_potential(1.0, kPot) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lj_potential(2.5, kPot) == 0.0);
    CHECK(lj_potential(3.7, kPot) == 0.0);
    CHECK_THROWS_AS(lj_potential(0.0, kPot), std::invalid_argument);
    CHECK_THROWS_AS(lj_potential(-1.0, kPot), std::invalid_argument);
}

TEST_CASE("lj potential at the minimum matches the closed form") {
    const double r = std::pow(2.0, 1.0 / 6.0);
    const double expected = -std::exp(1.0 / (r - 2.5));
    CHECK(lj_potential(r, kPot) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(lj_potential(r, kPot) == doctest::Approx(-0.4839).epsilon(2e-4));
}

TEST_CASE("pair force is zero beyond cutoff and antisymmetric") {
    const Vec2 far = lj_force_pair({3.0, 0.0}, kPot);
    CHECK(far.x == 0.0);
    CHECK(far.y == 0.0);
    for (double d : {0.95, 1.2, 1.5, 2.2}) {
        const Vec2 plus = lj_force_pair({d, 0.0}, kPot);
        const Vec2 minus = lj_force_pair({-d, 0.0}, kPot);
        CHECK(plus.x == -minus.x);
        CHECK(plus.y == -minus.y);
    }
    CHECK_THROWS_AS(lj_force_pair({0.0, 0.0}, kPot), std::invalid_argument);
}

TEST_CASE("pair force matches central finite differences of the potential") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sep(0.9, 2.6);
    const double h = 1e-6;
    for (int trial = 0; trial < 200; ++trial) {
        const double r = sep(rng);
        const double fd = -(lj_potential(r + h, kPot) - lj_potential(r - h, kPot)) / (2.0 * h);
        const Vec2 force = lj_force_pair({r, 0.0}, kPot);
        const double denom = std::max(std::abs(fd), std::max(std::abs(force.x), 1e-12));
        CHECK(std::abs(force.x - fd) / denom < 1e-6);
        CHECK(force.y == 0.0);
    }
    // Off-axis: the force must be radial with magnitude -V'(r).
    const Vec2 delta{0.9, -0.7};
    const double r = norm(delta);
    const Vec2 f = lj_force_pair(delta, kPot);
    const double expected_mag = -lj_potential_derivative(r, kPot);
    CHECK(dot(f, {-delta.y, delta.x}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dot(f, delta) / r == doctest::Approx(expected_mag).epsilon(1e-12));
}

TEST_CASE("forces: two isolated particles feel nothing") {
    SystemState s;
    s.q = {{1.0, 1.0}, {4.0, 1.0}};
    s.p = {{0.0, 0.0}, {0.0, 0.0}};
    const ForceField f = compute_forces(s, kBox, kPot);
    CHECK(f.f[0].x == 0.0);
    CHECK(f.f[0].y == 0.0);
    CHECK(f.f[1].x == 0.0);
    CHECK(f.f[1].y == 0.0);
}

TEST_CASE("forces obey the third law and the cell list matches the naive loop bit for bit") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {3u, 8u, 16u, 33u, 64u}) {
        for (int trial = 0; trial < 8; ++trial) {
            const SystemState s = test_helpers::uniform_state(n, kBox, rng);
            const ForceField cell = compute_forces(s, kBox, kPot);
            const ForceField naive = compute_forces_naive(s, kBox, kPot);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(cell.f[i].x == naive.f[i].x);
                CHECK(cell.f[i].y == naive.f[i].y);
            }
            Vec2 sum{0.0, 0.0};
            for (const auto& v : cell.f) sum += v;
            const double scale = std::max(max_force(cell), 1e-30);
            CHECK(std::abs(sum.x) <= 1e-10 * scale);
            CHECK(std::abs(sum.y) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("forces: cell list matches naive in a box with few cells per axis") {
    const BoxSpec small{5.75};
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemState s = test_helpers::uniform_state(16, small, rng);
        const ForceField cell = compute_forces(s, small, kPot);
        const ForceField naive = compute_forces_naive(s, small, kPot);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(cell.f[i].x == naive.f[i].x);
            CHECK(cell.f[i].y == naive.f[i].y);
        }
    }
}

TEST_CASE("cutoff locality: moving a distant particle leaves a force untouched") {
    SystemState s;
    s.q = {{1.0, 1.0}, {2.2, 1.0}, {9.0, 9.0}};
    s.p = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    const Vec2 before = compute_forces(s, kBox, kPot).f[0];
    s.q[2] = {8.0, 8.5};  // still farther than the cutoff from particles 0 and 1
    const Vec2 after = compute_forces(s, kBox, kPot).f[0];
    CHECK(before.x == after.x);
    CHECK(before.y == after.y);
}

TEST_CASE("total energy: trivial configurations") {
    SystemState s;
    s.q = {{1.0, 1.0}, {4.5, 1.0}};
    s.p = {{0.0, 0.0}, {0.0, 0.0}};
    CHECK(total_energy(s, kBox, kPot) == 0.0);

    s.q = {{1.0, 1.0}, {2.0, 1.0}};  // separation exactly 1: V(1) = 0
    CHECK(total_energy(s, kBox, kPot) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("total energy matches an independent pair-sum recomputation") {
    std::mt19937_64 rng(17);
    const SystemState s = test_helpers::random_state(16, kBox, rng);
    double expected = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        expected += 0.5 * norm2(s.p[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double r = norm(min_image(s.q[i] - s.q[j], kBox));
            if (r < kPot.r_cutoff) expected += lj_potential(r, kPot);
        }
    }
    CHECK(total_energy(s, kBox, kPot) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("verlet: free particle drifts exactly, momentum unchanged") {
    SystemState s;
    s.q = {{1.0, 1.0}, {5.0, 5.0}};
    s.p = {{1.0, 0.0}, {0.0, 0.0}};
    const SystemState next = verlet_step(s, 0.01, kBox, kPot);
    CHECK(next.q[0].x == doctest::Approx(1.01).epsilon(1e-15));
    CHECK(next.q[0].y == 1.0);
    CHECK(next.p[0].x == 1.0);
    CHECK(next.p[0].y == 0.0);
}

TEST_CASE("verlet: negate-momenta conjugation inverts a step") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const SystemState s = test_helpers::random_state(16, kBox, rng);
        SystemState forward = verlet_step(s, 0.01, kBox, kPot);
        for (auto& p : forward.p) p = -p;
        SystemState back = verlet_step(forward, 0.01, kBox, kPot);
        for (auto& p : back.p) p = -p;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Vec2 dq = min_image(back.q[i] - s.q[i], kBox);
            CHECK(std::abs(dq.x) < 1e-12);
            CHECK(std::abs(dq.y) < 1e-12);
            CHECK(std::abs(back.p[i].x - s.p[i].x) < 1e-12);
            CHECK(std::abs(back.p[i].y - s.p[i].y) < 1e-12);
        }
    }
}

TEST_CASE("verlet: bound pair conserves energy over ten thousand steps") {
    SystemState s;
    s.q = {{3.0, 3.0}, {4.15, 3.0}};
    s.p = {{0.0, 0.1}, {0.0, -0.1}};
    const double h0 = total_energy(s, kBox, kPot);
    REQUIRE(h0 < 0.0);  // bound

    SystemState coarse = s;
    for (int step = 0; step < 10000; ++step) coarse = verlet_step(coarse, 0.005, kBox, kPot);
    CHECK(std::abs(total_energy(coarse, kBox, kPot) - h0) / std::abs(h0) < 1e-3);

    // Reference run at dt = 1e-4 pins the true (conserved) energy.
    SystemState fine = s;
    for (int step = 0; step < 20000; ++step) fine = verlet_step(fine, 1e-4, kBox, kPot);
    CHECK(std::abs(total_energy(fine, kBox, kPot) - h0) / std::abs(h0) < 1e-7);
}

TEST_CASE("integrate: fencepost and preconditions") {
    std::mt19937_64 rng(29);
    const SystemState s = test_helpers::random_state(4, kBox, rng);
    CHECK_THROWS_AS(integrate(s, 0.01, 0, kBox, kPot), std::invalid_argument);
    const auto record = integrate(s, 0.01, 5, kBox, kPot, 1);
    CHECK(record.size() == 6);
}

TEST_CASE("integrate: splitting a run is bit-exact") {
    std::mt19937_64 rng(31);
    const SystemState s = test_helpers::random_state(9, kBox, rng);
    const auto whole = integrate(s, 0.01, 7, kBox, kPot, 7);
    const auto first = integrate(s, 0.01, 3, kBox, kPot, 3);
    const auto second = integrate(first.back(), 0.01, 4, kBox, kPot, 4);
    const SystemState& a = whole.back();
    const SystemState& b = second.back();
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.q[i].x == b.q[i].x);
        CHECK(a.q[i].y == b.q[i].y);
        CHECK(a.p[i].x == b.p[i].x);
        CHECK(a.p[i].y == b.p[i].y);
    }
}
