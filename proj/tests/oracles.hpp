#pragma once

// Test-only oracles, written independently of the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "orbnet/graph.hpp"
#include "orbnet/rng.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<std::uint32_t>>;
inline constexpr std::uint32_t kInf = 0x3fffffff;

// Dense adjacency from an edge set, ignoring library CSR.
inline Matrix adjacency(std::uint32_t n, const std::vector<orbnet::Edge>& edges) {
    Matrix a(n, std::vector<std::uint32_t>(n, 0));
    for (auto [u, v] : edges) {
        if (u == v) continue;
        a[u][v] = a[v][u] = 1;
    }
    return a;
}

inline Matrix floyd_warshall(const Matrix& adj) {
    const auto n = static_cast<std::uint32_t>(adj.size());
    Matrix d(n, std::vector<std::uint32_t>(n, kInf));
    for (std::uint32_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::uint32_t j = 0; j < n; ++j)
            if (adj[i][j]) d[i][j] = 1;
    }
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Mean over vertices with a reachable partner of their mean finite distance.
inline double mean_path_length(const Matrix& d) {
    double total = 0;
    int count = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double s = 0;
        int r = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (i != j && d[i][j] < kInf) {
                s += d[i][j];
                ++r;
            }
        }
        if (r > 0) {
            total += s / r;
            ++count;
        }
    }
    return total / count;
}

inline std::uint32_t components_by_bfs(const Matrix& adj) {
    const auto n = adj.size();
    std::vector<bool> seen(n, false);
    std::uint32_t c = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++c;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (std::size_t v = 0; v < n; ++v)
                if (adj[u][v] && !seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
        }
    }
    return c;
}

// All k-subsets that are cliques, by brute force over vertex subsets (small n only).
inline std::vector<std::uint64_t> clique_counts_brute(const Matrix& adj) {
    const auto n = static_cast<std::uint32_t>(adj.size());
    std::vector<std::uint64_t> counts;
    std::vector<std::uint32_t> stack;
    auto rec = [&](auto&& self, std::uint32_t start) -> void {
        for (std::uint32_t v = start; v < n; ++v) {
            bool ok = true;
            for (auto u : stack) ok = ok && adj[u][v];
            if (!ok) continue;
            stack.push_back(v);
            if (counts.size() < stack.size()) counts.resize(stack.size(), 0);
            ++counts[stack.size() - 1];
            self(self, v + 1);
            stack.pop_back();
        }
    };
    rec(rec, 0);
    return counts;
}

inline std::vector<orbnet::Edge> random_edges(orbnet::Rng& rng, std::uint32_t n, double p) {
    std::vector<orbnet::Edge> e;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) e.emplace_back(u, v);
    return e;
}

}  // namespace oracle
