#pragma once
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/distance_matrix.hpp"

namespace shadowlab::metrics {

// Result of the empirical Prokhorov computation: the optimal epsilon together
// with the partial matching certifying feasibility at that epsilon.
struct ProkhorovResult {
    double value{0.0};
    double epsilon{0.0};
    std::vector<std::pair<int, int>> matching_pairs;
    std::vector<int> unmatched_a;
    std::vector<int> unmatched_b;

    std::string to_json_string() const;
};

// Exact Prokhorov distance between two uniform empirical measures of equal
// size N. Uses the coupling characterization: rho <= eps iff the bipartite
// graph with edges {d_ij <= eps} has a matching leaving at most N*eps points
// uncovered. Feasibility changes only at the finite candidate set
// {d_ij} union {m/N}, so a binary search over sorted candidates with one
// maximum-matching probe per step returns the exact optimum (closed-infimum
// convention: the minimal feasible candidate).
ProkhorovResult prokhorov_empirical(const DistanceMatrix& d);

} // namespace shadowlab::metrics
