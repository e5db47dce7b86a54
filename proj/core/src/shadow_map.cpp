#include "shadowlab/shadow_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shadowlab/errors.hpp"
#include "shadowlab/matching.hpp"
#include "shadowlab/prokhorov.hpp"

namespace shadowlab::shadow {

SlackRelation build_slack_relation(const CellPartition& part_x, const CellPartition& part_y,
                                   const DistanceMatrix& cross, double alpha, double epsilon) {
    if (part_x.cells.size() != part_y.cells.size())
        throw std::invalid_argument("slack relation needs equal cell counts");
    if (part_x.m != part_y.m) throw std::invalid_argument("slack relation needs a common cell count m");

    SlackRelation rel;
    rel.n_real = part_x.cells.size();
    rel.alpha = alpha;
    rel.epsilon = epsilon;
    rel.delta = part_x.delta;
    rel.k_slack = static_cast<std::size_t>(std::ceil((alpha + epsilon) / rel.delta));
    const std::size_t total = rel.n_real + rel.k_slack;
    const double threshold = alpha + epsilon;

    rel.adjacency.assign(total, std::vector<bool>(total, false));
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            if (i >= rel.n_real || j >= rel.n_real) {
                rel.adjacency[i][j] = true;
                continue;
            }
            double min_pair = std::numeric_limits<double>::infinity();
            for (int x : part_x.cells[i])
                for (int y : part_y.cells[j])
                    min_pair = std::min(min_pair, cross.at(static_cast<std::size_t>(x),
                                                           static_cast<std::size_t>(y)));
            rel.adjacency[i][j] = min_pair < threshold;
        }
    }
    return rel;
}

std::vector<int> hall_matching(const SlackRelation& rel) {
    auto res = metrics::perfect_matching(rel.adjacency);
    if (!res.found) throw NoPerfectMatching(res.violator, res.neighborhood);
    return res.assignment;
}

double CouplingMap::exceedance(double beta) const {
    std::size_t count = 0;
    for (double dist : per_pair_distance)
        if (dist > beta) ++count;
    return static_cast<double>(count) / static_cast<double>(per_pair_distance.size());
}

WeakShadowingReport verify_weak_shadowing(const CouplingMap& map, double beta) {
    WeakShadowingReport report;
    report.beta = beta;
    report.exceedance = map.exceedance(beta);
    report.pass = report.exceedance < beta;
    if (!report.pass) {
        for (std::size_t i = 0; i < map.per_pair_distance.size(); ++i)
            if (map.per_pair_distance[i] > beta) report.offending_pairs.push_back(static_cast<int>(i));
    }
    return report;
}

namespace {

// Drops trailing cells into the remainder until the partition has exactly
// n_target cells. Both sides end with remainder size N - n_target * m, so the
// remainder bound (iii) holds on a side iff it held on the side that already
// had n_target cells.
void demote_cells(CellPartition& part, std::size_t n_target, std::span<const double> keys) {
    while (part.cells.size() > n_target) {
        for (int idx : part.cells.back()) part.remainder.push_back(idx);
        part.cells.pop_back();
    }
    std::sort(part.remainder.begin(), part.remainder.end(), [&](int a, int b) {
        const double ka = keys[static_cast<std::size_t>(a)];
        const double kb = keys[static_cast<std::size_t>(b)];
        return ka < kb || (ka == kb && a < b);
    });
    if (!(static_cast<double>(part.remainder.size()) <
          part.epsilon * static_cast<double>(part.sample_size)))
        throw InfeasiblePartition("remainder bound fails after equalizing cell counts");
}

} // namespace

CouplingMap build_shadow_map_from_distances(const DistanceMatrix& dist_xx,
                                            std::span<const double> keys_x,
                                            const DistanceMatrix& dist_yy,
                                            std::span<const double> keys_y,
                                            const DistanceMatrix& dist_xy, double epsilon,
                                            std::optional<double> alpha,
                                            std::optional<std::size_t> forced_m) {
    if (dist_xy.rows != dist_xy.cols)
        throw std::invalid_argument("shadow map needs equal sample sizes");
    const std::size_t n = dist_xy.rows;
    const double alpha_val = alpha ? *alpha : metrics::prokhorov_empirical(dist_xy).value;

    CellPartition part_x = partition_from_distances(dist_xx, keys_x, epsilon, forced_m);
    CellPartition part_y = partition_from_distances(dist_yy, keys_y, epsilon, forced_m);
    const std::size_t n_cells = std::min(part_x.cells.size(), part_y.cells.size());
    demote_cells(part_x, n_cells, keys_x);
    demote_cells(part_y, n_cells, keys_y);

    const SlackRelation rel = build_slack_relation(part_x, part_y, dist_xy, alpha_val, epsilon);
    const std::vector<int> phi_bar = hall_matching(rel);

    // Restrict to real cells; real cells matched into the slack range are
    // completed with the lowest available real target, in ascending order.
    std::vector<int> phi(n_cells, -1);
    std::vector<bool> target_used(n_cells, false);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const int t = phi_bar[i];
        if (t >= 0 && static_cast<std::size_t>(t) < n_cells) {
            phi[i] = t;
            target_used[static_cast<std::size_t>(t)] = true;
        }
    }
    std::size_t next_free = 0;
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (phi[i] >= 0) continue;
        while (target_used[next_free]) ++next_free;
        phi[i] = static_cast<int>(next_free);
        target_used[next_free] = true;
    }

    CouplingMap map;
    map.alpha = alpha_val;
    map.epsilon = epsilon;
    map.delta = part_x.delta;
    map.k_slack = rel.k_slack;
    map.n_cells = n_cells;
    map.assignment.assign(n, -1);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const auto& cx = part_x.cells[i];
        const auto& cy = part_y.cells[static_cast<std::size_t>(phi[i])];
        for (std::size_t r = 0; r < cx.size(); ++r)
            map.assignment[static_cast<std::size_t>(cx[r])] = cy[r];
    }
    for (std::size_t r = 0; r < part_x.remainder.size(); ++r)
        map.assignment[static_cast<std::size_t>(part_x.remainder[r])] = part_y.remainder[r];

    std::vector<bool> hit(n, false);
    map.per_pair_distance.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int j = map.assignment[i];
        if (j < 0 || hit[static_cast<std::size_t>(j)])
            throw std::logic_error("shadow map assignment is not a bijection");
        hit[static_cast<std::size_t>(j)] = true;
        map.per_pair_distance[i] = dist_xy.at(i, static_cast<std::size_t>(j));
    }
    return map;
}

CouplingMap build_shadow_map(std::span<const metrics::FeatureVec> features_x,
                             std::span<const metrics::FeatureVec> features_y, double epsilon,
                             std::optional<double> alpha, std::optional<std::size_t> forced_m) {
    const auto dxx = metrics::pairwise_distances(features_x, features_x);
    const auto dyy = metrics::pairwise_distances(features_y, features_y);
    const auto dxy = metrics::pairwise_distances(features_x, features_y);
    return build_shadow_map_from_distances(dxx, feature_sort_keys(features_x), dyy,
                                           feature_sort_keys(features_y), dxy, epsilon, alpha,
                                           forced_m);
}

CouplingMap build_shadow_map(std::span<const paths::PathPL> features_x,
                             std::span<const paths::PathPL> features_y, double epsilon,
                             std::optional<double> alpha, std::optional<std::size_t> forced_m) {
    const auto dxx = metrics::pairwise_distances(features_x, features_x);
    const auto dyy = metrics::pairwise_distances(features_y, features_y);
    const auto dxy = metrics::pairwise_distances(features_x, features_y);
    return build_shadow_map_from_distances(dxx, feature_sort_keys(features_x), dyy,
                                           feature_sort_keys(features_y), dxy, epsilon, alpha,
                                           forced_m);
}

} // namespace shadowlab::shadow
