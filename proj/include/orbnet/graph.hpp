#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbnet/kernels.hpp"
#include "orbnet/modring.hpp"

namespace orbnet {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Where a graph came from. Not part of graph equality.
struct Provenance {
    std::uint64_t modulus = 0;
    std::vector<MapSpec> maps;
    std::optional<std::uint64_t> seed;
    std::string source;
};

// Immutable finite simple graph in CSR form: sorted, duplicate-free neighbor
// lists, symmetric, no self-loops.
class Graph {
public:
    Graph() : offsets_{0} {}

    // Self-loops and repeated edges in the input are dropped.
    static Graph from_edges(Vertex n, std::span<const Edge> edges, Provenance provenance = {});

    Vertex vertex_count() const noexcept { return static_cast<Vertex>(offsets_.size() - 1); }
    std::uint64_t edge_count() const noexcept { return adjacency_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::uint32_t max_degree() const noexcept;
    bool has_edge(Vertex u, Vertex v) const noexcept;

    // Edges as (u, v) with u < v in ascending order.
    std::vector<Edge> edges() const;

    kernels::CsrView csr() const noexcept { return {offsets_, adjacency_}; }

    const Provenance& provenance() const noexcept { return provenance_; }
    Graph with_provenance(Provenance provenance) const;

    // Same vertex count and identical sorted adjacency.
    friend bool operator==(const Graph& a, const Graph& b) noexcept {
        return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> adjacency_;
    Provenance provenance_;
};

// Common small graphs, mostly for tests and examples.
Graph complete_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph path_graph(Vertex n);
Graph empty_graph(Vertex n);

// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::uint32_t n = 0) { reset(n); }

    void reset(std::uint32_t n);
    std::uint32_t find(std::uint32_t x) noexcept;
    bool unite(std::uint32_t a, std::uint32_t b) noexcept;
    std::uint32_t components() const noexcept { return components_; }
    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(parent_.size()); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::uint32_t components_ = 0;
};

// Connected component label per vertex (labels in order of first vertex).
std::vector<std::uint32_t> component_labels(const Graph& g);
std::uint32_t component_count(const Graph& g);

// Subgraph induced on the given vertices (renumbered in the given order).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

}  // namespace orbnet
