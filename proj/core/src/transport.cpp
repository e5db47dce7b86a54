#include "shadowlab/transport.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace shadowlab::metrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Search {
    std::vector<double> dist_l, dist_r;
    std::vector<int> parent_r;   // right j reached from left parent_r[j]
    std::vector<int> parent_l;   // left i reached from right parent_l[i] (backward arc)
    std::vector<bool> done_l, done_r;
};

} // namespace

TransportPlan solve_transport(const std::vector<double>& cost, std::size_t n_left,
                              std::size_t n_right, std::int64_t supply, std::int64_t demand) {
    if (cost.size() != n_left * n_right) throw std::invalid_argument("cost matrix size mismatch");
    if (supply < 1 || demand < 1) throw std::invalid_argument("supply and demand must be positive");
    if (static_cast<std::int64_t>(n_left) * supply != static_cast<std::int64_t>(n_right) * demand)
        throw std::invalid_argument("total supply must equal total demand");

    TransportPlan plan;
    plan.flow.assign(n_left * n_right, 0);
    std::vector<std::int64_t> sent(n_left, 0), recv(n_right, 0);
    std::vector<double> pi_l(n_left, 0.0), pi_r(n_right, 0.0);
    std::int64_t remaining = static_cast<std::int64_t>(n_left) * supply;

    Search s;
    while (remaining > 0) {
        s.dist_l.assign(n_left, kInf);
        s.dist_r.assign(n_right, kInf);
        s.parent_r.assign(n_right, -1);
        s.parent_l.assign(n_left, -1);
        s.done_l.assign(n_left, false);
        s.done_r.assign(n_right, false);
        for (std::size_t i = 0; i < n_left; ++i)
            if (sent[i] < supply) s.dist_l[i] = 0.0;

        // Dense Dijkstra over the residual bipartite graph. Reduced costs are
        // nonnegative by the potential invariant; tiny float negatives on
        // flow-carrying arcs are clamped.
        while (true) {
            double best = kInf;
            int node = -1;  // lefts are [0, n_left), rights offset by n_left
            for (std::size_t i = 0; i < n_left; ++i)
                if (!s.done_l[i] && s.dist_l[i] < best) best = s.dist_l[i], node = static_cast<int>(i);
            for (std::size_t j = 0; j < n_right; ++j)
                if (!s.done_r[j] && s.dist_r[j] < best)
                    best = s.dist_r[j], node = static_cast<int>(n_left + j);
            if (node < 0) break;
            if (node < static_cast<int>(n_left)) {
                const auto i = static_cast<std::size_t>(node);
                s.done_l[i] = true;
                for (std::size_t j = 0; j < n_right; ++j) {
                    if (s.done_r[j]) continue;
                    const double rc = std::max(0.0, cost[i * n_right + j] + pi_l[i] - pi_r[j]);
                    if (s.dist_l[i] + rc < s.dist_r[j]) {
                        s.dist_r[j] = s.dist_l[i] + rc;
                        s.parent_r[j] = static_cast<int>(i);
                    }
                }
            } else {
                const auto j = static_cast<std::size_t>(node) - n_left;
                s.done_r[j] = true;
                for (std::size_t i = 0; i < n_left; ++i) {
                    if (s.done_l[i] || plan.flow[i * n_right + j] == 0) continue;
                    const double rc = std::max(0.0, pi_r[j] - cost[i * n_right + j] - pi_l[i]);
                    if (s.dist_r[j] + rc < s.dist_l[i]) {
                        s.dist_l[i] = s.dist_r[j] + rc;
                        s.parent_l[i] = static_cast<int>(j);
                    }
                }
            }
        }

        int target = -1;
        double target_dist = kInf;
        for (std::size_t j = 0; j < n_right; ++j) {
            if (recv[j] < demand && s.dist_r[j] < target_dist) {
                target_dist = s.dist_r[j];
                target = static_cast<int>(j);
            }
        }
        if (target < 0) throw std::runtime_error("transport: no augmenting path");

        // Bottleneck along the alternating path ending at `target`.
        std::int64_t push = demand - recv[static_cast<std::size_t>(target)];
        {
            int j = target;
            while (true) {
                const int i = s.parent_r[static_cast<std::size_t>(j)];
                if (s.parent_l[static_cast<std::size_t>(i)] < 0) {
                    push = std::min(push, supply - sent[static_cast<std::size_t>(i)]);
                    break;
                }
                const int jb = s.parent_l[static_cast<std::size_t>(i)];
                push = std::min(push, plan.flow[static_cast<std::size_t>(i) * n_right +
                                                static_cast<std::size_t>(jb)]);
                j = jb;
            }
        }
        {
            int j = target;
            while (true) {
                const int i = s.parent_r[static_cast<std::size_t>(j)];
                plan.flow[static_cast<std::size_t>(i) * n_right + static_cast<std::size_t>(j)] += push;
                if (s.parent_l[static_cast<std::size_t>(i)] < 0) {
                    sent[static_cast<std::size_t>(i)] += push;
                    break;
                }
                const int jb = s.parent_l[static_cast<std::size_t>(i)];
                plan.flow[static_cast<std::size_t>(i) * n_right + static_cast<std::size_t>(jb)] -= push;
                j = jb;
            }
            recv[static_cast<std::size_t>(target)] += push;
        }
        remaining -= push;

        for (std::size_t i = 0; i < n_left; ++i)
            if (s.dist_l[i] < kInf) pi_l[i] += std::min(s.dist_l[i], target_dist);
        for (std::size_t j = 0; j < n_right; ++j)
            if (s.dist_r[j] < kInf) pi_r[j] += std::min(s.dist_r[j], target_dist);
    }

    plan.cost = 0.0;
    for (std::size_t i = 0; i < n_left; ++i)
        for (std::size_t j = 0; j < n_right; ++j)
            plan.cost += static_cast<double>(plan.flow[i * n_right + j]) * cost[i * n_right + j];
    return plan;
}

} // namespace shadowlab::metrics
