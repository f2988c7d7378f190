#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbnet/graph.hpp"
#include "orbnet/metrics.hpp"
#include "orbnet/sweep.hpp"

namespace orbnet {

// --- edge lists ----------------------------------------------------------------
//
//   # vertices 5          optional; fixes the vertex count (ids must be < 5)
//   # modulus 5           optional provenance, written by save_edge_list
//   # maps x^2+1;x^2+2
//   # seed 7
//   # source ...
//   0 1                   one undirected edge per line; extra columns ignored
//   % comment
//
// Without "# vertices", ids 0..max are used as-is when every id in that range
// occurs; otherwise ids are compacted in increasing order and the original id
// of vertex v is kept in original_ids[v].

struct EdgeListInfo {
    std::uint64_t self_loops = 0;  // dropped
    std::uint64_t duplicates = 0;  // dropped (either orientation)
    std::vector<std::uint64_t> original_ids;  // empty unless relabeled
};

struct LoadedGraph {
    Graph graph;
    EdgeListInfo info;
};

// Throws ParseError with the 1-based line number for malformed lines.
LoadedGraph read_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

// --- DOT -----------------------------------------------------------------------

// "graph G {" then one node statement per isolated vertex and one edge
// statement per edge in ascending order.
void write_dot(const Graph& g, std::ostream& out);
void export_dot(const Graph& g, const std::filesystem::path& path);

// --- JSON ----------------------------------------------------------------------

// Stable field names; undefined values are null, rationals are "p/q" strings.
nlohmann::ordered_json stats_to_json(const StatsRecord& record);
StatsRecord stats_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::ordered_json& j);

// --- CSV -----------------------------------------------------------------------
//
//   # experiment: min_diameter        provenance lines, in order
//   # seed: 1
//   d,n,diameter,...                  header: axes then outcomes
//   2,131,7,...
//
// RFC-4180 quoting; text cells that would read back as numbers or as empty
// are quoted so parsing restores the cell type. Doubles use the shortest
// representation that round-trips. The header line is preceded by
// "# axes: <count>" so parameters and outcomes can be told apart.

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult read_sweep_csv(std::istream& in);
SweepResult read_sweep_csv(const std::filesystem::path& path);

std::string csv_escape(const Cell& cell);
Cell parse_csv_cell(std::string_view text, bool quoted);

}  // namespace orbnet
