#pragma once
#include <cstddef>
#include <vector>

namespace shadowlab::metrics {

// Bipartite adjacency as per-left-vertex lists of right vertices.
using Adjacency = std::vector<std::vector<int>>;

// Maximum-cardinality bipartite matching (Hopcroft-Karp: BFS layering plus
// layered DFS augmentation, O(E sqrt(V))). Returns match_left with -1 for
// unmatched left vertices.
struct MatchingResult {
    std::vector<int> match_left;
    std::vector<int> match_right;
    std::size_t size{0};
};

MatchingResult hopcroft_karp(const Adjacency& adj, std::size_t n_right);

// Perfect matching on a square boolean relation via single augmenting paths
// with a fixed scan order (deterministic). On failure returns the Hall
// violator: the left vertices reachable in the final alternating tree, whose
// neighborhood is strictly smaller.
struct PerfectMatchingResult {
    bool found{false};
    std::vector<int> assignment;     // left -> right, valid when found
    std::vector<int> violator;       // Hall set A when not found
    std::vector<int> neighborhood;   // N(A) when not found
};

PerfectMatchingResult perfect_matching(const std::vector<std::vector<bool>>& relation);

} // namespace shadowlab::metrics
