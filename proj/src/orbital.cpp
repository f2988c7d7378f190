#include "orbnet/orbital.hpp"

#include <algorithm>

namespace orbnet {
namespace {

void check_specs(Modulus n, std::span<const MapSpec> specs) {
    if (specs.empty()) throw DomainError("at least one map is required");
    if (n.value() > 0xffffffffULL) throw DomainError("graphs need n < 2^32");
}

std::vector<MapTable> tables_for(Modulus n, std::span<const MapSpec> specs) {
    check_specs(n, specs);
    std::vector<MapTable> tables;
    tables.reserve(specs.size());
    for (const MapSpec& spec : specs) tables.push_back(map_table(normalize(spec, n), n));
    return tables;
}

}  // namespace

DigraphView::DigraphView(Vertex n, std::vector<MapTable> tables) : n_(n), tables_(std::move(tables)) {
    for (const MapTable& t : tables_) {
        if (t.size() != n_) throw DomainError("map table size differs from vertex count");
        for (auto y : t) {
            if (y >= n_) throw DomainError("map table image out of range");
        }
    }
}

std::vector<Arc> DigraphView::arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count());
    for (std::uint32_t i = 0; i < tables_.size(); ++i) {
        for (Vertex x = 0; x < n_; ++x) out.push_back({x, tables_[i][x], i});
    }
    return out;
}

ArcCensus arc_census(const DigraphView& view) {
    ArcCensus c;
    c.arcs = view.arc_count();
    std::vector<Edge> undirected;
    undirected.reserve(c.arcs);
    for (std::size_t i = 0; i < view.generator_count(); ++i) {
        const MapTable& t = view.table(i);
        for (Vertex x = 0; x < view.vertex_count(); ++x) {
            if (t[x] == x) {
                ++c.self_loops;
            } else {
                undirected.emplace_back(std::min(x, t[x]), std::max(x, t[x]));
            }
        }
    }
    std::sort(undirected.begin(), undirected.end());
    c.distinct_edges = static_cast<std::uint64_t>(std::unique(undirected.begin(), undirected.end()) - undirected.begin());
    c.coincident = c.arcs - c.self_loops - c.distinct_edges;
    return c;
}

Graph build_from_tables(Vertex n, std::span<const MapTable> tables, Provenance provenance) {
    std::vector<Edge> edges;
    edges.reserve(tables.size() * n);
    for (const MapTable& t : tables) {
        if (t.size() != n) throw DomainError("map table size differs from vertex count");
        for (Vertex x = 0; x < n; ++x) {
            if (t[x] != x) edges.emplace_back(x, t[x]);
        }
    }
    return Graph::from_edges(n, edges, std::move(provenance));
}

Graph build_orbital_graph(Modulus n, std::span<const MapSpec> specs) {
    const auto tables = tables_for(n, specs);
    Provenance provenance;
    provenance.modulus = n.value();
    for (const MapSpec& spec : specs) provenance.maps.push_back(normalize(spec, n));
    return build_from_tables(static_cast<Vertex>(n.value()), tables, std::move(provenance));
}

DigraphView digraph_view(Modulus n, std::span<const MapSpec> specs) {
    return DigraphView(static_cast<Vertex>(n.value()), tables_for(n, specs));
}

std::vector<MapTable> realize_as_orbital(const Graph& g) {
    const Vertex n = g.vertex_count();
    const std::uint32_t d = g.max_degree();
    std::vector<MapTable> tables(d, MapTable(n));
    for (Vertex x = 0; x < n; ++x) {
        const auto nb = g.neighbors(x);
        for (std::uint32_t i = 0; i < d; ++i) tables[i][x] = i < nb.size() ? nb[i] : x;
    }
    return tables;
}

bool maps_are_invertible(Modulus n, std::span<const MapSpec> specs) {
    if (n.value() > 0xffffffffULL) throw DomainError("graphs need n < 2^32");
    std::vector<bool> hit;
    for (const MapSpec& spec : specs) {
        if (std::holds_alternative<Permutation>(spec)) continue;
        const auto table = map_table(normalize(spec, n), n);
        hit.assign(table.size(), false);
        std::size_t distinct = 0;
        for (auto y : table) {
            if (!hit[y]) {
                hit[y] = true;
                ++distinct;
            }
        }
        if (distinct != table.size()) return false;
    }
    return true;
}

}  // namespace orbnet
