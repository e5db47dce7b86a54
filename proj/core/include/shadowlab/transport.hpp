#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace shadowlab::metrics {

// Minimum-cost transportation between uniform discrete measures: every left
// node carries `supply` units, every right node absorbs `demand` units, with
// n_left * supply == n_right * demand. Costs are nonnegative reals.
struct TransportPlan {
    std::vector<std::int64_t> flow;  // n_left x n_right, row-major units
    double cost{0.0};

    std::int64_t at(std::size_t i, std::size_t j, std::size_t cols) const {
        return flow[i * cols + j];
    }
};

// Successive shortest augmenting paths with potentials (Dijkstra on reduced
// costs). Exact up to float rounding in path comparisons.
TransportPlan solve_transport(const std::vector<double>& cost, std::size_t n_left,
                              std::size_t n_right, std::int64_t supply, std::int64_t demand);

} // namespace shadowlab::metrics
