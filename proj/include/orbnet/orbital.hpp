#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orbnet/graph.hpp"
#include "orbnet/modring.hpp"

namespace orbnet {

// A graph built from maps keeps its modulus and specs in provenance().
using OrbitalGraph = Graph;

// Explicit image table of one map: table[x] = T(x).
using MapTable = std::vector<std::uint32_t>;

struct Arc {
    Vertex from;
    Vertex to;
    std::uint32_t generator;
    friend bool operator==(const Arc&, const Arc&) = default;
};

// The functional digraph x -> T_i(x), self-loops included: exactly n arcs
// per generator.
class DigraphView {
public:
    DigraphView(Vertex n, std::vector<MapTable> tables);

    Vertex vertex_count() const noexcept { return n_; }
    std::size_t generator_count() const noexcept { return tables_.size(); }
    const MapTable& table(std::size_t generator) const { return tables_.at(generator); }
    std::uint64_t arc_count() const noexcept { return static_cast<std::uint64_t>(n_) * tables_.size(); }
    std::vector<Arc> arcs() const;

private:
    Vertex n_;
    std::vector<MapTable> tables_;
};

// How the d*n arcs collapse onto the simple graph:
// edge_count = arcs - self_loops - coincident.
struct ArcCensus {
    std::uint64_t arcs = 0;
    std::uint64_t self_loops = 0;
    // Non-loop arcs whose undirected edge was already produced by an earlier arc.
    std::uint64_t coincident = 0;
    std::uint64_t distinct_edges = 0;
};

ArcCensus arc_census(const DigraphView& view);

// Throws DomainError for an empty spec list, n >= 2^32, or Henon on non-square n.
Graph build_orbital_graph(Modulus n, std::span<const MapSpec> specs);
DigraphView digraph_view(Modulus n, std::span<const MapSpec> specs);

// Simple graph of explicit tables (each of size n).
Graph build_from_tables(Vertex n, std::span<const MapTable> tables, Provenance provenance = {});

// Max-degree many tables with T_i(x) = i-th smallest neighbor of x, or x
// itself when x has fewer than i neighbors. build_from_tables on the result
// reproduces g.
std::vector<MapTable> realize_as_orbital(const Graph& g);

// True iff every spec is a bijection on Z_n (checked by counting images).
bool maps_are_invertible(Modulus n, std::span<const MapSpec> specs);

}  // namespace orbnet
