#include "shadowlab/prokhorov.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "shadowlab/matching.hpp"

namespace shadowlab::metrics {

namespace {

Adjacency threshold_adjacency(const DistanceMatrix& d, double eps) {
    Adjacency adj(d.rows);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) {
            if (d.at(i, j) <= eps) adj[i].push_back(static_cast<int>(j));
        }
    }
    return adj;
}

bool feasible(const DistanceMatrix& d, double eps, MatchingResult* out) {
    const auto n = static_cast<double>(d.rows);
    MatchingResult m = hopcroft_karp(threshold_adjacency(d, eps), d.cols);
    const bool ok = static_cast<double>(d.rows - m.size) <= n * eps;
    if (ok && out) *out = std::move(m);
    return ok;
}

} // namespace

ProkhorovResult prokhorov_empirical(const DistanceMatrix& d) {
    if (d.rows != d.cols) throw std::invalid_argument("prokhorov_empirical needs equal sample sizes");
    const std::size_t n = d.rows;

    std::vector<double> candidates = d.d;
    for (std::size_t m = 0; m <= n; ++m)
        candidates.push_back(static_cast<double>(m) / static_cast<double>(n));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Feasibility is monotone in eps; find the least feasible candidate.
    std::size_t lo = 0, hi = candidates.size() - 1;  // candidate 1.0 is always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(d, candidates[mid], nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }

    ProkhorovResult res;
    res.value = candidates[lo];
    res.epsilon = candidates[lo];
    MatchingResult matching;
    feasible(d, res.epsilon, &matching);
    for (std::size_t i = 0; i < n; ++i) {
        if (matching.match_left[i] >= 0)
            res.matching_pairs.emplace_back(static_cast<int>(i), matching.match_left[i]);
        else
            res.unmatched_a.push_back(static_cast<int>(i));
    }
    for (std::size_t j = 0; j < n; ++j)
        if (matching.match_right[j] < 0) res.unmatched_b.push_back(static_cast<int>(j));
    return res;
}

std::string ProkhorovResult::to_json_string() const {
    nlohmann::json j;
    j["value"] = value;
    j["epsilon"] = epsilon;
    auto& pairs = j["matching_pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : matching_pairs) pairs.push_back({a, b});
    j["unmatched"] = nlohmann::json::array();
    for (int a : unmatched_a) j["unmatched"].push_back({{"side", "a"}, {"index", a}});
    for (int b : unmatched_b) j["unmatched"].push_back({{"side", "b"}, {"index", b}});
    return j.dump();
}

} // namespace shadowlab::metrics
