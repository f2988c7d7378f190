// Parity propositions for even moduli and the isomorphism search they need.

#include <algorithm>
#include <map>
#include <queue>

#include "orbnet/experiments.hpp"
#include "orbnet/metrics.hpp"
#include "orbnet/orbital.hpp"

namespace orbnet {
namespace {

// Stable color refinement on the disjoint union of a and b (b's vertices
// offset by a.vertex_count()). Returns the final colors.
std::vector<std::uint32_t> refine_colors(const Graph& a, const Graph& b) {
    const Vertex na = a.vertex_count();
    const Vertex n = na + b.vertex_count();
    auto neighbors = [&](Vertex v) { return v < na ? a.neighbors(v) : b.neighbors(v - na); };
    auto offset = [&](Vertex v) { return v < na ? 0u : na; };

    std::vector<std::uint32_t> color(n);
    for (Vertex v = 0; v < n; ++v) color[v] = static_cast<std::uint32_t>(neighbors(v).size());
    std::size_t classes = 0;
    std::vector<std::vector<std::uint32_t>> sigs(n);
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        for (Vertex v = 0; v < n; ++v) {
            auto& sig = sigs[v];
            sig.assign(1, color[v]);
            for (Vertex w : neighbors(v)) sig.push_back(color[w + offset(v)]);
            std::sort(sig.begin() + 1, sig.end());
            ids.emplace(sig, 0);
        }
        // Number signatures in sorted order so ids do not depend on vertex order.
        std::uint32_t id = 0;
        for (auto& [key, value] : ids) value = id++;
        for (Vertex v = 0; v < n; ++v) color[v] = ids.at(sigs[v]);
        if (ids.size() == classes) return color;
        classes = ids.size();
    }
}

class IsoSearch {
public:
    IsoSearch(const Graph& a, const Graph& b, std::vector<std::uint32_t> colors, std::uint64_t budget)
        : a_(a), b_(b), color_(std::move(colors)), budget_(budget) {
        const Vertex n = a.vertex_count();
        map_.assign(n, kUnset);
        inverse_.assign(n, kUnset);
        order_ = search_order();
    }

    IsomorphismResult run() {
        IsomorphismResult r;
        const bool found = extend(0);
        r.nodes = nodes_;
        if (found) {
            r.verdict = IsoVerdict::Isomorphic;
            r.mapping = map_;
        } else {
            r.verdict = exhausted_ ? IsoVerdict::Unknown : IsoVerdict::NotIsomorphic;
        }
        return r;
    }

private:
    static constexpr Vertex kUnset = ~Vertex{0};

    std::uint32_t color_a(Vertex v) const { return color_[v]; }
    std::uint32_t color_b(Vertex w) const { return color_[a_.vertex_count() + w]; }

    // BFS order within each component, components started from the vertex
    // of rarest color, so every vertex after the first has a mapped neighbor.
    std::vector<Vertex> search_order() const {
        const Vertex n = a_.vertex_count();
        std::map<std::uint32_t, std::uint32_t> freq;
        for (Vertex v = 0; v < n; ++v) ++freq[color_a(v)];
        std::vector<Vertex> starts(n);
        for (Vertex v = 0; v < n; ++v) starts[v] = v;
        std::stable_sort(starts.begin(), starts.end(),
                         [&](Vertex x, Vertex y) { return freq[color_a(x)] < freq[color_a(y)]; });
        std::vector<bool> seen(n, false);
        std::vector<Vertex> order;
        for (Vertex s : starts) {
            if (seen[s]) continue;
            std::queue<Vertex> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                const Vertex v = q.front();
                q.pop();
                order.push_back(v);
                for (Vertex w : a_.neighbors(v))
                    if (!seen[w]) {
                        seen[w] = true;
                        q.push(w);
                    }
            }
        }
        return order;
    }

    bool consistent(Vertex v, Vertex w) const {
        std::uint32_t mapped_a = 0, mapped_b = 0;
        for (Vertex u : a_.neighbors(v)) {
            if (map_[u] == kUnset) continue;
            ++mapped_a;
            if (!b_.has_edge(w, map_[u])) return false;
        }
        for (Vertex x : b_.neighbors(w))
            if (inverse_[x] != kUnset) ++mapped_b;
        return mapped_a == mapped_b;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        const Vertex v = order_[depth];
        // Candidates: unmapped neighbors of the image of a mapped neighbor,
        // or every vertex when v starts a new component.
        std::span<const Vertex> pool;
        std::vector<Vertex> all;
        Vertex anchor = kUnset;
        for (Vertex u : a_.neighbors(v))
            if (map_[u] != kUnset) {
                anchor = map_[u];
                break;
            }
        if (anchor != kUnset) {
            pool = b_.neighbors(anchor);
        } else {
            all.resize(b_.vertex_count());
            for (Vertex w = 0; w < b_.vertex_count(); ++w) all[w] = w;
            pool = all;
        }
        for (Vertex w : pool) {
            if (inverse_[w] != kUnset || color_b(w) != color_a(v) || !consistent(v, w)) continue;
            map_[v] = w;
            inverse_[w] = v;
            if (extend(depth + 1)) return true;
            map_[v] = kUnset;
            inverse_[w] = kUnset;
            if (exhausted_) return false;
        }
        return false;
    }

    const Graph& a_;
    const Graph& b_;
    std::vector<std::uint32_t> color_;
    std::uint64_t budget_;
    std::vector<Vertex> map_, inverse_, order_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

void require_even(std::uint32_t n) {
    if (n < 2 || n % 2 != 0) throw DomainError("the parity propositions need an even modulus");
}

std::vector<Residue> reduced(std::uint32_t n, std::span<const Residue> shifts, unsigned parity) {
    if (shifts.empty()) throw DomainError("at least one shift is required");
    std::vector<Residue> out;
    for (Residue s : shifts) {
        const Residue r = s % n;
        if (r % 2 != parity) throw DomainError(std::string("every shift must be ") + (parity ? "odd" : "even"));
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::string to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::Isomorphic: return "isomorphic";
        case IsoVerdict::NotIsomorphic: return "not-isomorphic";
        case IsoVerdict::Unknown: return "unknown";
    }
    return "unknown";
}

IsomorphismResult find_isomorphism(const Graph& a, const Graph& b, std::uint64_t budget) {
    IsomorphismResult r;
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
        r.verdict = IsoVerdict::NotIsomorphic;
        return r;
    }
    auto colors = refine_colors(a, b);
    const Vertex n = a.vertex_count();
    std::vector<std::uint32_t> ca(colors.begin(), colors.begin() + n), cb(colors.begin() + n, colors.end());
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) {  // refinement is invariant under isomorphism
        r.verdict = IsoVerdict::NotIsomorphic;
        return r;
    }
    return IsoSearch(a, b, std::move(colors), budget).run();
}

SymmetryVerdict check_symmetry_proposition(std::uint32_t n, std::span<const Residue> shifts, std::uint64_t iso_budget) {
    require_even(n);
    const auto s = reduced(n, shifts, 0);
    const Graph g = build_orbital_graph(Modulus(n), quadratic_maps(s));

    SymmetryVerdict v;
    v.classes_disconnected = true;
    for (auto [x, y] : g.edges())
        if ((x + y) % 2 != 0) v.classes_disconnected = false;

    std::vector<Vertex> even, odd;
    for (Vertex x = 0; x < n; ++x) (x % 2 ? odd : even).push_back(x);
    const Graph g1 = induced_subgraph(g, even);
    const Graph g2 = induced_subgraph(g, odd);
    v.even_components = component_count(g1);
    v.odd_components = component_count(g2);

    if (n % 8 != 0) {
        const std::uint64_t h = n % 8 == 4 ? n / 4 : n / 2;
        const auto c = static_cast<std::uint32_t>(h * h % n);
        v.shift = c;
        const Modulus m(n);
        v.commutes = true;
        for (Vertex x = 0; x < n && v.commutes; x += 2)
            for (Residue a : s)
                if (m.add(m.mul(m.add(x, c), m.add(x, c)), a) != m.add(m.add(m.mul(x, x), a), c)) v.commutes = false;
        bool maps_edges = g1.edge_count() == g2.edge_count();
        for (auto [x, y] : g.edges()) {
            if (!maps_edges) break;
            if (x % 2 == 0 && !g.has_edge(static_cast<Vertex>(m.add(x, c)), static_cast<Vertex>(m.add(y, c))))
                maps_edges = false;
        }
        if (v.commutes && maps_edges && c % 2 == 1) {
            v.isomorphic = IsoVerdict::Isomorphic;
            v.method = "translation";
            return v;
        }
    }
    v.isomorphic = find_isomorphism(g1, g2, iso_budget).verdict;
    v.method = "search";
    return v;
}

std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g) {
    const Vertex n = g.vertex_count();
    constexpr std::uint8_t kNone = 2;
    std::vector<std::uint8_t> color(n, kNone);
    std::queue<Vertex> q;
    for (Vertex s = 0; s < n; ++s) {
        if (color[s] != kNone) continue;
        color[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            for (Vertex w : g.neighbors(v)) {
                if (color[w] == kNone) {
                    color[w] = static_cast<std::uint8_t>(1 - color[v]);
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

BipartiteVerdict check_bipartite_proposition(std::uint32_t n, std::span<const Residue> shifts) {
    require_even(n);
    const auto s = reduced(n, shifts, 1);
    const Graph g = build_orbital_graph(Modulus(n), quadratic_maps(s));
    BipartiteVerdict v;
    const auto coloring = two_coloring(g);
    v.bipartite = coloring.has_value();
    if (coloring)
        for (Vertex x = 0; x < n; ++x) ((*coloring)[x] ? v.part1 : v.part0).push_back(x);
    v.parity_partition = true;
    for (auto [x, y] : g.edges())
        if ((x + y) % 2 == 0) v.parity_partition = false;
    const Clustering c = clustering(g);
    v.triangles = c.triangles;
    v.nu_global = c.global;
    return v;
}

}  // namespace orbnet
