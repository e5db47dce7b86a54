#pragma once
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shadowlab/path.hpp"

namespace shadowlab::metrics {

enum class MetricTag { euclidean, path_sup };

// Pairwise distances between two finite samples under a declared metric.
struct DistanceMatrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> d;
    MetricTag tag{MetricTag::euclidean};

    double at(std::size_t i, std::size_t j) const { return d[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return d[i * cols + j]; }
};

using FeatureVec = std::vector<double>;

// Euclidean distances between feature vectors in R^k. Throws on non-finite
// distances or mismatched dimensions.
DistanceMatrix pairwise_distances(std::span<const FeatureVec> a, std::span<const FeatureVec> b);

// Sup-norm distances between piecewise-linear paths; incommensurate grids are
// refined onto the common grid first (exact for PL paths).
DistanceMatrix pairwise_distances(std::span<const paths::PathPL> a, std::span<const paths::PathPL> b);

} // namespace shadowlab::metrics
