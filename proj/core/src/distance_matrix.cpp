#include "shadowlab/distance_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowlab::metrics {

DistanceMatrix pairwise_distances(std::span<const FeatureVec> a, std::span<const FeatureVec> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    const std::size_t dim = a[0].size();
    DistanceMatrix m;
    m.rows = a.size();
    m.cols = b.size();
    m.tag = MetricTag::euclidean;
    m.d.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (a[i].size() != dim) throw std::invalid_argument("inconsistent feature dimension");
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (b[j].size() != dim) throw std::invalid_argument("inconsistent feature dimension");
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double diff = a[i][k] - b[j][k];
                s += diff * diff;
            }
            const double dist = std::sqrt(s);
            if (!std::isfinite(dist)) throw std::invalid_argument("non-finite distance");
            m.at(i, j) = dist;
        }
    }
    return m;
}

DistanceMatrix pairwise_distances(std::span<const paths::PathPL> a, std::span<const paths::PathPL> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    DistanceMatrix m;
    m.rows = a.size();
    m.cols = b.size();
    m.tag = MetricTag::path_sup;
    m.d.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            const double dist = paths::sup_distance(a[i], b[j]);
            if (!std::isfinite(dist)) throw std::invalid_argument("non-finite distance");
            m.at(i, j) = dist;
        }
    }
    return m;
}

} // namespace shadowlab::metrics
