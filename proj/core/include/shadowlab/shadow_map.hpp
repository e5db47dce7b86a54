#pragma once
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shadowlab/distance_matrix.hpp"
#include "shadowlab/partition.hpp"

namespace shadowlab::shadow {

// Boolean relation on cell indices augmented with k slack indices: real cells
// i and j are related when the minimum feature distance between their images
// is below alpha + epsilon; every pair involving a slack index is related.
// With k = ceil((alpha + epsilon) / delta) the relation satisfies Hall's
// condition whenever alpha is at least the Prokhorov distance between the
// underlying samples.
struct SlackRelation {
    std::size_t n_real{0};
    std::size_t k_slack{0};
    double alpha{0.0};
    double epsilon{0.0};
    double delta{0.0};
    std::vector<std::vector<bool>> adjacency;  // (n_real + k_slack)^2
};

SlackRelation build_slack_relation(const CellPartition& part_x, const CellPartition& part_y,
                                   const DistanceMatrix& cross, double alpha, double epsilon);

// Perfect matching within the relation via deterministic augmenting paths.
// Throws NoPerfectMatching with a Hall-violator certificate when none exists.
std::vector<int> hall_matching(const SlackRelation& rel);

// Measure-preserving coupling between two equal-size samples: a bijection on
// indices with the feature distance of every pair.
struct CouplingMap {
    std::vector<int> assignment;          // X index -> Y index, a bijection
    std::vector<double> per_pair_distance;  // indexed by X index
    double alpha{0.0};
    double epsilon{0.0};
    double delta{0.0};
    std::size_t k_slack{0};
    std::size_t n_cells{0};

    // Fraction of pairs with feature distance strictly above beta.
    double exceedance(double beta) const;
};

struct WeakShadowingReport {
    double beta{0.0};
    double exceedance{0.0};
    bool pass{false};
    std::vector<int> offending_pairs;  // X indices with distance > beta
};

// pass iff exceedance(beta) < beta, strict, per the weak-shadowing condition.
WeakShadowingReport verify_weak_shadowing(const CouplingMap& map, double beta);

// Realizes the constructive coupling on finite samples: partitions both
// sides with a common cell count, matches cells through the slack relation,
// pairs indices within matched cells in sort order, and completes the
// bijection with the lowest-available-index rule. When alpha is not supplied
// it is the exact empirical Prokhorov distance of the cross matrix. The
// construction guarantees exceedance(alpha + 3 epsilon) < k delta + epsilon.
CouplingMap build_shadow_map_from_distances(const DistanceMatrix& dist_xx,
                                            std::span<const double> keys_x,
                                            const DistanceMatrix& dist_yy,
                                            std::span<const double> keys_y,
                                            const DistanceMatrix& dist_xy, double epsilon,
                                            std::optional<double> alpha = std::nullopt,
                                            std::optional<std::size_t> forced_m = std::nullopt);

CouplingMap build_shadow_map(std::span<const metrics::FeatureVec> features_x,
                             std::span<const metrics::FeatureVec> features_y, double epsilon,
                             std::optional<double> alpha = std::nullopt,
                             std::optional<std::size_t> forced_m = std::nullopt);

CouplingMap build_shadow_map(std::span<const paths::PathPL> features_x,
                             std::span<const paths::PathPL> features_y, double epsilon,
                             std::optional<double> alpha = std::nullopt,
                             std::optional<std::size_t> forced_m = std::nullopt);

} // namespace shadowlab::shadow
