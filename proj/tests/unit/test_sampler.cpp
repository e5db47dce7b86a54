#include <doctest.h>

#include <cmath>

#include "shadowlab/engine.hpp"
#include "shadowlab/sampler.hpp"

using namespace shadowlab;
using namespace shadowlab::md;

namespace {

const BoxSpec kBox{5.75};
const PotentialSpec kPot{};

ThermostatSpec quick_thermo(std::uint64_t seed, std::size_t burn_in = 2000) {
    ThermostatSpec t;
    t.beta = 1.0;
    t.gamma = 1.0;
    t.langevin_dt = 0.01;
    t.burn_in_steps = burn_in;
    t.seed = seed;
    return t;
}

} // namespace

TEST_CASE("same seed gives a bit-identical canonical draw") {
    const SystemState a = sample_canonical(kBox, kPot, 8, quick_thermo(42));
    const SystemState b = sample_canonical(kBox, kPot, 8, quick_thermo(42));
    const SystemState c = sample_canonical(kBox, kPot, 8, quick_thermo(43));
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < 8; ++i) {
        identical = identical && a.q[i].x == b.q[i].x && a.q[i].y == b.q[i].y &&
                    a.p[i].x == b.p[i].x && a.p[i].y == b.p[i].y;
        differs = differs || a.q[i].x != c.q[i].x;
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("a noiseless zero-friction step degenerates to one Hamiltonian step") {
    const SystemState s = sample_canonical(kBox, kPot, 6, quick_thermo(5, 200));
    const double dt = 0.004;
    const SystemState langevin = langevin_baoab_step(s, dt, 0.0, 1.0, kBox, kPot, nullptr);

    // Kick-drift-kick composition with the same step.
    SystemState manual = s;
    ForceField f = compute_forces(manual, kBox, kPot);
    for (std::size_t i = 0; i < manual.size(); ++i) manual.p[i] += f.f[i] * (dt / 2.0);
    for (std::size_t i = 0; i < manual.size(); ++i)
        manual.q[i] = wrap_position(manual.q[i] + manual.p[i] * dt, kBox);
    f = compute_forces(manual, kBox, kPot);
    for (std::size_t i = 0; i < manual.size(); ++i) manual.p[i] += f.f[i] * (dt / 2.0);

    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(langevin.q[i].x == doctest::Approx(manual.q[i].x).epsilon(1e-14));
        CHECK(langevin.q[i].y == doctest::Approx(manual.q[i].y).epsilon(1e-14));
        CHECK(langevin.p[i].x == doctest::Approx(manual.p[i].x).epsilon(1e-14));
        CHECK(langevin.p[i].y == doctest::Approx(manual.p[i].y).epsilon(1e-14));
    }
}

TEST_CASE("remove_com_velocity zeroes the total momentum and is idempotent") {
    SystemState s;
    s.q = {{1.0, 1.0}, {2.5, 2.5}, {4.0, 4.0}};
    s.p = {{0.7, 0.7}, {0.7, 0.7}, {0.7, 0.7}};
    const SystemState zeroed = remove_com_velocity(s);
    for (const auto& p : zeroed.p) {
        CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(p.y == doctest::Approx(0.0).epsilon(1e-15));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(zeroed.q[i].x == s.q[i].x);
        CHECK(zeroed.q[i].y == s.q[i].y);
    }

    const SystemState drawn = sample_canonical(kBox, kPot, 8, quick_thermo(9, 500));
    const SystemState once = remove_com_velocity(drawn);
    Vec2 total{0.0, 0.0};
    for (const auto& p : once.p) total += p;
    CHECK(std::abs(total.x) / 8.0 < 1e-14);
    CHECK(std::abs(total.y) / 8.0 < 1e-14);
    const SystemState twice = remove_com_velocity(once);
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(std::abs(twice.p[i].x - once.p[i].x) < 1e-14);
        CHECK(std::abs(twice.p[i].y - once.p[i].y) < 1e-14);
    }
}

TEST_CASE("kick_particle adds the velocity increment and nothing else") {
    const SystemState s = sample_canonical(kBox, kPot, 4, quick_thermo(1, 200));
    const SystemState same = kick_particle(s, 2, {0.0, 0.0});
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(same.p[i].x == s.p[i].x);
        CHECK(same.p[i].y == s.p[i].y);
    }

    const Vec2 dv{10.0, 0.0};
    const SystemState kicked = kick_particle(s, 0, dv);
    double ke_before = 0.0, ke_after = 0.0;
    for (const auto& p : s.p) ke_before += 0.5 * norm2(p);
    for (const auto& p : kicked.p) ke_after += 0.5 * norm2(p);
    const double expected_gain = 0.5 * (2.0 * dv.x * s.p[0].x + dv.x * dv.x);
    CHECK(ke_after - ke_before == doctest::Approx(expected_gain).epsilon(1e-12));

    CHECK_THROWS_AS(kick_particle(s, 4, dv), std::out_of_range);

    const SystemState balanced = remove_com_velocity(kicked);
    Vec2 total{0.0, 0.0};
    for (const auto& p : balanced.p) total += p;
    CHECK(std::abs(total.x) < 1e-12);
    CHECK(std::abs(total.y) < 1e-12);
}

TEST_CASE("momentum marginal looks Gaussian and equipartition holds (smoke scale)") {
    // Acceptance runs the full 200-draw calibration; this is a 40-draw smoke
    // check with wider bands.
    const std::size_t draws = 40;
    const std::size_t n = 8;
    double ke_sum = 0.0, ke_sq = 0.0;
    double skew_num = 0.0, skew_den = 0.0;
    std::vector<double> px;
    for (std::size_t d = 0; d < draws; ++d) {
        ThermostatSpec t = quick_thermo(derive_stream(77, 1, d), 5000);
        const SystemState s = sample_canonical(kBox, kPot, n, t);
        double ke = 0.0;
        for (const auto& p : s.p) {
            ke += 0.5 * norm2(p);
            px.push_back(p.x);
        }
        const double per_dof = ke / (2.0 * static_cast<double>(n));
        ke_sum += per_dof;
        ke_sq += per_dof * per_dof;
    }
    const double mean = ke_sum / static_cast<double>(draws);
    const double var = ke_sq / static_cast<double>(draws) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(draws));
    CHECK(std::abs(mean - 0.5) < 5.0 * std::max(se, 1e-3));

    double m1 = 0.0;
    for (double v : px) m1 += v;
    m1 /= static_cast<double>(px.size());
    for (double v : px) {
        skew_num += (v - m1) * (v - m1) * (v - m1);
        skew_den += (v - m1) * (v - m1);
    }
    const double n_samples = static_cast<double>(px.size());
    const double skew = (skew_num / n_samples) / std::pow(skew_den / n_samples, 1.5);
    CHECK(std::abs(skew) < 5.0 * std::sqrt(6.0 / n_samples));
}

TEST_CASE("zero total momentum is preserved by the dynamics") {
    SystemState s = sample_canonical(kBox, kPot, 8, quick_thermo(3, 1000));
    s = remove_com_velocity(s);
    for (int step = 0; step < 2000; ++step) s = verlet_step(s, 0.01, kBox, kPot);
    Vec2 total{0.0, 0.0};
    for (const auto& p : s.p) total += p;
    CHECK(std::abs(total.x) < 1e-10);
    CHECK(std::abs(total.y) < 1e-10);
}

TEST_CASE("thermostat spec validation") {
    ThermostatSpec t = quick_thermo(0);
    t.gamma = 0.0;
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
    t = quick_thermo(0);
    t.beta = -1.0;
    CHECK_THROWS_AS(validate(t), std::invalid_argument);
    CHECK_THROWS_AS(sample_canonical(kBox, kPot, 1, quick_thermo(0)), std::invalid_argument);
}
