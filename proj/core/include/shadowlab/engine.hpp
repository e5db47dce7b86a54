#pragma once
#include <cstddef>
#include <vector>

#include "shadowlab/box.hpp"
#include "shadowlab/potential.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab::md {

// Pair force sums over all pairs within the cutoff, accelerated by a cell-list
// spatial decomposition (cell edge >= r_cutoff). Per particle, contributions
// are accumulated over neighbor indices in ascending order, which makes the
// result bit-identical to compute_forces_naive.
ForceField compute_forces(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot);

// Reference O(n^2) double loop with the same fixed summation order.
ForceField compute_forces_naive(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot);

// H(q, p) = sum |p_i|^2 / 2 + sum_{i<j} V(|q_i - q_j|), minimum-image distances.
double total_energy(const SystemState& state, const BoxSpec& box, const PotentialSpec& pot);

// One Stoermer-Verlet step in the half-drift / kick / half-drift form:
//   q half  = q + p dt/2
//   p next  = p + dt f(q half)
//   q next  = q half + p next dt/2, wrapped into the box.
// Throws InstabilityError if the new state is not finite.
SystemState verlet_step(const SystemState& state, double dt, const BoxSpec& box, const PotentialSpec& pot);

// Iterates verlet_step num_steps times and records every record_stride-th
// state, including step 0. Deterministic given its inputs.
std::vector<SystemState> integrate(const SystemState& state, double dt, std::size_t num_steps,
                                   const BoxSpec& box, const PotentialSpec& pot,
                                   std::size_t record_stride = 1);

} // namespace shadowlab::md
