#include "shadowlab/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace shadowlab::metrics {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HkState {
    const Adjacency& adj;
    std::vector<int>& match_l;
    std::vector<int>& match_r;
    std::vector<int> dist;

    bool bfs() {
        std::queue<int> q;
        bool reachable_free = false;
        dist.assign(match_l.size(), kInf);
        for (std::size_t u = 0; u < match_l.size(); ++u) {
            if (match_l[u] < 0) {
                dist[u] = 0;
                q.push(static_cast<int>(u));
            }
        }
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                const int w = match_r[static_cast<std::size_t>(v)];
                if (w < 0) {
                    reachable_free = true;
                } else if (dist[static_cast<std::size_t>(w)] == kInf) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            const int w = match_r[static_cast<std::size_t>(v)];
            if (w < 0 || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
                match_l[static_cast<std::size_t>(u)] = v;
                match_r[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        dist[static_cast<std::size_t>(u)] = kInf;
        return false;
    }
};

} // namespace

MatchingResult hopcroft_karp(const Adjacency& adj, std::size_t n_right) {
    MatchingResult res;
    res.match_left.assign(adj.size(), -1);
    res.match_right.assign(n_right, -1);
    HkState state{adj, res.match_left, res.match_right, {}};
    while (state.bfs()) {
        for (std::size_t u = 0; u < adj.size(); ++u) {
            if (res.match_left[u] < 0 && state.dfs(static_cast<int>(u))) ++res.size;
        }
    }
    return res;
}

namespace {

bool try_augment(const std::vector<std::vector<bool>>& rel, int u, std::vector<int>& match_l,
                 std::vector<int>& match_r, std::vector<bool>& visited_l, std::vector<bool>& visited_r) {
    visited_l[static_cast<std::size_t>(u)] = true;
    const std::size_t n = rel.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (!rel[static_cast<std::size_t>(u)][v] || visited_r[v]) continue;
        visited_r[v] = true;
        const int w = match_r[v];
        if (w < 0 || try_augment(rel, w, match_l, match_r, visited_l, visited_r)) {
            match_l[static_cast<std::size_t>(u)] = static_cast<int>(v);
            match_r[v] = u;
            return true;
        }
    }
    return false;
}

} // namespace

PerfectMatchingResult perfect_matching(const std::vector<std::vector<bool>>& relation) {
    const std::size_t n = relation.size();
    for (const auto& row : relation)
        if (row.size() != n) throw std::invalid_argument("relation must be square");

    PerfectMatchingResult res;
    std::vector<int> match_l(n, -1), match_r(n, -1);
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<bool> visited_l(n, false), visited_r(n, false);
        if (!try_augment(relation, static_cast<int>(u), match_l, match_r, visited_l, visited_r)) {
            // The alternating tree rooted at u witnesses a Hall violation:
            // every right vertex it touches is matched, and each one
            // contributes its partner to the tree, so |N(A)| = |A| - 1.
            for (std::size_t i = 0; i < n; ++i)
                if (visited_l[i]) res.violator.push_back(static_cast<int>(i));
            for (std::size_t j = 0; j < n; ++j)
                if (visited_r[j]) res.neighborhood.push_back(static_cast<int>(j));
            return res;
        }
    }
    res.found = true;
    res.assignment = std::move(match_l);
    return res;
}

} // namespace shadowlab::metrics
