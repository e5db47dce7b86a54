#pragma once
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shadowlab/distance_matrix.hpp"

namespace shadowlab::shadow {

using metrics::DistanceMatrix;

// Partition of a size-N sample into disjoint cells of exactly m indices each
// plus a remainder, such that
//   (i)   every cell has exactly m indices (delta = m/N mass each),
//   (ii)  the feature image of every cell has diameter < epsilon,
//   (iii) the remainder holds fewer than epsilon * N indices.
// Cell member lists are ordered by (sort key, index).
struct CellPartition {
    std::vector<std::vector<int>> cells;
    std::vector<int> remainder;
    double epsilon{0.0};
    std::size_t m{1};
    double delta{0.0};  // m / N
    std::size_t sample_size{0};
};

// Greedy construction: disjoint differences of open epsilon/2 balls centered
// on the sample's own feature points in index order (each ball difference has
// feature diameter < epsilon), then equal-count slicing of each ball
// difference along the sort key. Slicing leftovers go to the remainder.
// Default cell count m = 1, the smallest feasible choice; a forced m is
// honored when conditions (i)-(iii) still hold and rejected with
// InfeasiblePartition otherwise.
CellPartition partition_from_distances(const DistanceMatrix& self_distances,
                                       std::span<const double> sort_keys, double epsilon,
                                       std::optional<std::size_t> forced_m = std::nullopt);

// Convenience wrappers deriving the self-distance matrix and sort keys
// (first coordinate for feature vectors, x-endpoint for paths).
CellPartition partition_sample(std::span<const metrics::FeatureVec> features, double epsilon,
                               std::optional<std::size_t> forced_m = std::nullopt);
CellPartition partition_sample(std::span<const paths::PathPL> features, double epsilon,
                               std::optional<std::size_t> forced_m = std::nullopt);

std::vector<double> feature_sort_keys(std::span<const metrics::FeatureVec> features);
std::vector<double> feature_sort_keys(std::span<const paths::PathPL> features);

// Checks invariants (i)-(iii) directly; throws on violation. Used by tests
// and after cell-count equalization.
void check_partition(const CellPartition& part, const DistanceMatrix& self_distances);

} // namespace shadowlab::shadow
