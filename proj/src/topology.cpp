// Clique counts, Euler characteristic, curvature and inductive dimension.

#include <algorithm>
#include <unordered_map>

#include "orbnet/metrics.hpp"

namespace orbnet {
namespace {

// Counts every complete subgraph whose vertices all lie in the initial
// candidate list, by extending cliques in increasing vertex order.
class CliqueCounter {
public:
    CliqueCounter(const Graph& g, unsigned max_size, std::uint64_t budget)
        : g_(g), max_size_(max_size), budget_(budget) {}

    // counts[s] += number of cliques with s + 1 + base vertices, where base
    // vertices are implied by the caller (0 for whole-graph counting).
    void extend(std::span<const Vertex> candidates, unsigned size, std::vector<std::uint64_t>& counts) {
        if (candidates.empty()) return;
        if (size >= max_size_) {
            truncated_ = true;
            return;
        }
        if (counts.size() <= size) counts.resize(size + 1, 0);
        std::vector<Vertex> next;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (++visited_ > budget_) throw ResourceError("clique enumeration budget exceeded");
            ++counts[size];
            const Vertex u = candidates[i];
            const auto nu = g_.neighbors(u);
            next.clear();
            std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                                  std::upper_bound(nu.begin(), nu.end(), u), nu.end(), std::back_inserter(next));
            extend(next, size + 1, counts);
        }
    }

    bool truncated() const noexcept { return truncated_; }

private:
    const Graph& g_;
    unsigned max_size_;
    std::uint64_t budget_;
    std::uint64_t visited_ = 0;
    bool truncated_ = false;
};

struct VertexSetHash {
    std::size_t operator()(const std::vector<Vertex>& s) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Vertex v : s) h = (h ^ v) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h ^ (h >> 32));
    }
};

class DimensionSolver {
public:
    DimensionSolver(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

    // set must be sorted.
    Rational of(const std::vector<Vertex>& set) {
        if (++calls_ > budget_) throw ResourceError("inductive dimension budget exceeded");
        switch (set.size()) {
            case 0: return Rational(-1);
            case 1: return Rational(0);
            case 2: return g_.has_edge(set[0], set[1]) ? Rational(1) : Rational(0);
            default: break;
        }
        if (const auto it = memo_.find(set); it != memo_.end()) return it->second;
        Rational sum(0);
        std::vector<Vertex> sphere;
        for (Vertex x : set) {
            const auto nx = g_.neighbors(x);
            sphere.clear();
            std::set_intersection(set.begin(), set.end(), nx.begin(), nx.end(), std::back_inserter(sphere));
            sum += of(sphere);
        }
        const Rational result = Rational(1) + sum / Rational(static_cast<std::int64_t>(set.size()));
        memo_.emplace(set, result);
        return result;
    }

    Rational of_whole_graph() {
        const Vertex n = g_.vertex_count();
        if (n == 0) return Rational(-1);
        Rational sum(0);
        for (Vertex x = 0; x < n; ++x) {
            const auto nx = g_.neighbors(x);
            sum += of(std::vector<Vertex>(nx.begin(), nx.end()));
        }
        return Rational(1) + sum / Rational(n);
    }

private:
    const Graph& g_;
    std::uint64_t budget_;
    std::uint64_t calls_ = 0;
    std::unordered_map<std::vector<Vertex>, Rational, VertexSetHash> memo_;
};

}  // namespace

CliqueVector clique_vector(const Graph& g, unsigned k_max, std::uint64_t node_budget) {
    CliqueVector out;
    const Vertex n = g.vertex_count();
    if (n == 0) return out;
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    CliqueCounter counter(g, k_max + 1, node_budget);
    counter.extend(all, 0, out.counts);
    out.complete = !counter.truncated();
    while (!out.counts.empty() && out.counts.back() == 0) out.counts.pop_back();
    return out;
}

std::int64_t euler_characteristic(const CliqueVector& cliques) {
    if (!cliques.complete) throw DomainError("Euler characteristic needs the full clique vector");
    std::int64_t chi = 0;
    for (std::size_t k = 0; k < cliques.counts.size(); ++k) {
        const auto c = static_cast<std::int64_t>(cliques.counts[k]);
        chi += (k % 2 == 0) ? c : -c;
    }
    return chi;
}

Rational curvature(const Graph& g, Vertex x) {
    const auto sphere = g.neighbors(x);
    std::vector<std::uint64_t> v;  // v[j] = number of K_{j+1} in S(x)
    CliqueCounter counter(g, 64, kDefaultCliqueBudget);
    counter.extend(sphere, 0, v);
    Rational k(1);
    for (std::size_t j = 0; j < v.size(); ++j) {
        // term index k = j + 1: (-1)^(j+1) V_j / (j + 2)
        const Rational term(static_cast<std::int64_t>(v[j]), static_cast<std::int64_t>(j + 2));
        if (j % 2 == 0) {
            k -= term;
        } else {
            k += term;
        }
    }
    return k;
}

Rational curvature_sum(const Graph& g) {
    Rational total(0);
    for (Vertex x = 0; x < g.vertex_count(); ++x) total += curvature(g, x);
    return total;
}

Rational inductive_dimension(const Graph& g, std::uint64_t budget) {
    return DimensionSolver(g, budget).of_whole_graph();
}

Rational inductive_dimension(const Graph& g, std::span<const Vertex> induced, std::uint64_t budget) {
    std::vector<Vertex> set(induced.begin(), induced.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return DimensionSolver(g, budget).of(set);
}

}  // namespace orbnet
