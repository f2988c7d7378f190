#include "orbnet/graph.hpp"

#include <algorithm>

namespace orbnet {

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges, Provenance provenance) {
    Graph g;
    g.provenance_ = std::move(provenance);
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);

    std::vector<Edge> directed;
    directed.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
        if (u == v) continue;
        directed.emplace_back(u, v);
        directed.emplace_back(v, u);
    }
    std::sort(directed.begin(), directed.end());
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

    g.adjacency_.reserve(directed.size());
    for (auto [u, v] : directed) {
        ++g.offsets_[u + 1];
        g.adjacency_.push_back(v);
    }
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    return g;
}

std::uint32_t Graph::max_degree() const noexcept {
    std::uint32_t best = 0;
    for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::with_provenance(Provenance provenance) const {
    Graph g = *this;
    g.provenance_ = std::move(provenance);
    return g;
}

Graph complete_graph(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

Graph cycle_graph(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
    return Graph::from_edges(n, e);
}

Graph path_graph(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
    return Graph::from_edges(n, e);
}

Graph empty_graph(Vertex n) { return Graph::from_edges(n, {}); }

void UnionFind::reset(std::uint32_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
    components_ = n;
}

std::uint32_t UnionFind::find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
    const Vertex n = g.vertex_count();
    constexpr std::uint32_t unset = 0xffffffffu;
    std::vector<std::uint32_t> label(n, unset);
    std::vector<Vertex> stack;
    std::uint32_t next = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (label[s] != unset) continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.neighbors(u)) {
                if (label[v] == unset) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

std::uint32_t component_count(const Graph& g) {
    const auto labels = component_labels(g);
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<std::uint32_t> index(g.vertex_count(), 0xffffffffu);
    for (std::uint32_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
    std::vector<Edge> e;
    for (std::uint32_t i = 0; i < vertices.size(); ++i) {
        for (Vertex w : g.neighbors(vertices[i])) {
            if (index[w] != 0xffffffffu && i < index[w]) e.emplace_back(i, index[w]);
        }
    }
    return Graph::from_edges(static_cast<Vertex>(vertices.size()), e);
}

}  // namespace orbnet
