#include "shadowlab/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include "shadowlab/errors.hpp"

namespace shadowlab::shadow {

namespace {

std::vector<std::vector<int>> greedy_ball_cover(const DistanceMatrix& d, double epsilon) {
    const std::size_t n = d.rows;
    std::vector<bool> taken(n, false);
    std::vector<std::vector<int>> groups;
    for (std::size_t center = 0; center < n; ++center) {
        std::vector<int> group;
        for (std::size_t j = 0; j < n; ++j) {
            if (!taken[j] && d.at(center, j) < epsilon / 2.0) group.push_back(static_cast<int>(j));
        }
        if (group.empty()) continue;
        for (int j : group) taken[static_cast<std::size_t>(j)] = true;
        groups.push_back(std::move(group));
    }
    return groups;
}

void sort_by_key(std::vector<int>& indices, std::span<const double> keys) {
    std::sort(indices.begin(), indices.end(), [&](int a, int b) {
        const double ka = keys[static_cast<std::size_t>(a)];
        const double kb = keys[static_cast<std::size_t>(b)];
        return ka < kb || (ka == kb && a < b);
    });
}

} // namespace

CellPartition partition_from_distances(const DistanceMatrix& self_distances,
                                       std::span<const double> sort_keys, double epsilon,
                                       std::optional<std::size_t> forced_m) {
    if (self_distances.rows != self_distances.cols)
        throw std::invalid_argument("self-distance matrix must be square");
    const std::size_t n = self_distances.rows;
    if (n == 0) throw std::invalid_argument("empty sample");
    if (sort_keys.size() != n) throw std::invalid_argument("sort key count mismatch");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    auto groups = greedy_ball_cover(self_distances, epsilon);
    const std::size_t m = forced_m.value_or(1);
    if (m < 1) throw std::invalid_argument("cell count m must be at least 1");

    std::size_t n_cells = 0, leftover = 0;
    for (const auto& g : groups) {
        n_cells += g.size() / m;
        leftover += g.size() % m;
    }
    if (n_cells == 0)
        throw InfeasiblePartition("no full cell can form: m exceeds every covering group");
    if (!(static_cast<double>(leftover) < epsilon * static_cast<double>(n)))
        throw InfeasiblePartition("remainder condition |S*| < eps N fails for the requested m");

    CellPartition part;
    part.epsilon = epsilon;
    part.m = m;
    part.sample_size = n;
    part.delta = static_cast<double>(m) / static_cast<double>(n);
    for (auto& g : groups) {
        sort_by_key(g, sort_keys);
        std::size_t pos = 0;
        while (pos + m <= g.size()) {
            part.cells.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(pos),
                                    g.begin() + static_cast<std::ptrdiff_t>(pos + m));
            pos += m;
        }
        for (; pos < g.size(); ++pos) part.remainder.push_back(g[pos]);
    }
    sort_by_key(part.remainder, sort_keys);
    return part;
}

std::vector<double> feature_sort_keys(std::span<const metrics::FeatureVec> features) {
    std::vector<double> keys(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) keys[i] = features[i].empty() ? 0.0 : features[i][0];
    return keys;
}

std::vector<double> feature_sort_keys(std::span<const paths::PathPL> features) {
    std::vector<double> keys(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) keys[i] = features[i].values.back().x;
    return keys;
}

CellPartition partition_sample(std::span<const metrics::FeatureVec> features, double epsilon,
                               std::optional<std::size_t> forced_m) {
    const auto d = metrics::pairwise_distances(features, features);
    return partition_from_distances(d, feature_sort_keys(features), epsilon, forced_m);
}

CellPartition partition_sample(std::span<const paths::PathPL> features, double epsilon,
                               std::optional<std::size_t> forced_m) {
    const auto d = metrics::pairwise_distances(features, features);
    return partition_from_distances(d, feature_sort_keys(features), epsilon, forced_m);
}

void check_partition(const CellPartition& part, const DistanceMatrix& self_distances) {
    const std::size_t n = part.sample_size;
    std::vector<int> seen(n, 0);
    for (const auto& cell : part.cells) {
        if (cell.size() != part.m) throw std::logic_error("cell has wrong count");
        for (int i : cell) {
            for (int j : cell) {
                if (!(self_distances.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) <
                      part.epsilon))
                    throw std::logic_error("cell feature diameter not below epsilon");
            }
            ++seen[static_cast<std::size_t>(i)];
        }
    }
    for (int i : part.remainder) ++seen[static_cast<std::size_t>(i)];
    for (std::size_t i = 0; i < n; ++i)
        if (seen[i] != 1) throw std::logic_error("cells plus remainder must partition the sample");
    if (!(static_cast<double>(part.remainder.size()) < part.epsilon * static_cast<double>(n)))
        throw std::logic_error("remainder mass not below epsilon");
}

} // namespace shadowlab::shadow
