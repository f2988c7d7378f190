#include "orbnet/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace orbnet {
namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool starts_with_word(std::string_view s, std::string_view word, std::string_view& rest) {
    if (s.substr(0, word.size()) != word) return false;
    rest = trim(s.substr(word.size()));
    return true;
}

template <class T>
bool parse_int(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

// Writes to path.tmp and renames, so readers never see a half-written file.
template <class F>
void write_file(const std::filesystem::path& path, F&& body) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        body(out);
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string maps_text(const std::vector<MapSpec>& maps) {
    std::string out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (i) out += ';';
        out += to_string(maps[i]);
    }
    return out;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

}  // namespace

// --- edge lists ----------------------------------------------------------------

LoadedGraph read_edge_list(std::istream& in) {
    std::optional<std::uint64_t> declared;
    Provenance prov;
    std::string maps_line;
    std::size_t maps_lineno = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '%') continue;
        if (s.front() == '#') {
            std::string_view body = trim(s.substr(1)), rest;
            if (starts_with_word(body, "vertices", rest)) {
                std::uint64_t n = 0;
                if (!parse_int(rest, n) || n >= (std::uint64_t{1} << 32)) throw ParseError("bad vertex count", lineno);
                declared = n;
            } else if (starts_with_word(body, "modulus", rest)) {
                if (!parse_int(rest, prov.modulus)) throw ParseError("bad modulus", lineno);
            } else if (starts_with_word(body, "maps", rest)) {
                maps_line = std::string(rest);
                maps_lineno = lineno;
            } else if (starts_with_word(body, "seed", rest)) {
                std::uint64_t seed = 0;
                if (!parse_int(rest, seed)) throw ParseError("bad seed", lineno);
                prov.seed = seed;
            } else if (starts_with_word(body, "source", rest)) {
                prov.source = std::string(rest);
            }
            continue;
        }
        std::istringstream fields{std::string(s)};
        std::string a, b;
        fields >> a >> b;
        std::uint64_t u = 0, v = 0;
        if (b.empty() || !parse_int(std::string_view(a), u) || !parse_int(std::string_view(b), v)) {
            throw ParseError("expected two non-negative integer vertex ids", lineno);
        }
        if (declared && (u >= *declared || v >= *declared)) throw ParseError("vertex id exceeds declared count", lineno);
        raw.emplace_back(u, v);
    }
    if (in.bad()) throw IoError("read error");
    if (!maps_line.empty()) {
        if (prov.modulus == 0) throw ParseError("maps given without modulus", maps_lineno);
        try {
            prov.maps = parse_map_list(maps_line, Modulus(prov.modulus));
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad maps: ") + e.what(), maps_lineno);
        }
    }

    LoadedGraph out;
    std::uint64_t n = declared.value_or(0);
    if (!declared) {
        std::vector<std::uint64_t> ids;
        ids.reserve(2 * raw.size());
        for (auto [u, v] : raw) {
            ids.push_back(u);
            ids.push_back(v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        const bool dense = ids.empty() || ids.back() + 1 == ids.size();
        n = ids.size();
        if (n >= (std::uint64_t{1} << 32)) throw ResourceError("too many vertices");
        if (!dense) {
            for (auto& [u, v] : raw) {
                u = static_cast<std::uint64_t>(std::lower_bound(ids.begin(), ids.end(), u) - ids.begin());
                v = static_cast<std::uint64_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
            }
            out.info.original_ids = std::move(ids);
        }
    }

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (auto [u, v] : raw) {
        if (u == v) {
            ++out.info.self_loops;
            continue;
        }
        edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    }
    std::sort(edges.begin(), edges.end());
    const auto unique_end = std::unique(edges.begin(), edges.end());
    out.info.duplicates = static_cast<std::uint64_t>(edges.end() - unique_end);
    edges.erase(unique_end, edges.end());
    out.graph = Graph::from_edges(static_cast<Vertex>(n), edges, std::move(prov));
    return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    const Provenance& p = g.provenance();
    out << "# vertices " << g.vertex_count() << '\n';
    if (p.modulus != 0) out << "# modulus " << p.modulus << '\n';
    if (!p.maps.empty()) out << "# maps " << maps_text(p.maps) << '\n';
    if (p.seed) out << "# seed " << *p.seed << '\n';
    if (!p.source.empty()) out << "# source " << one_line(p.source) << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_edge_list(g, out); });
}

// --- DOT -----------------------------------------------------------------------

void write_dot(const Graph& g, std::ostream& out) {
    out << "graph G {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) out << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

void export_dot(const Graph& g, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_dot(g, out); });
}

// --- JSON ----------------------------------------------------------------------

json provenance_to_json(const Provenance& p) {
    json j;
    j["modulus"] = p.modulus;
    json maps = json::array();
    for (const auto& m : p.maps) maps.push_back(to_string(m));
    j["maps"] = std::move(maps);
    j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
    j["source"] = p.source;
    return j;
}

Provenance provenance_from_json(const json& j) {
    Provenance p;
    p.modulus = j.at("modulus").get<std::uint64_t>();
    for (const auto& m : j.at("maps")) {
        if (p.modulus == 0) throw DomainError("provenance maps need a modulus");
        p.maps.push_back(parse_map_spec(m.get<std::string>(), Modulus(p.modulus)));
    }
    if (!j.at("seed").is_null()) p.seed = j.at("seed").get<std::uint64_t>();
    p.source = j.at("source").get<std::string>();
    return p;
}

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json opt_rational(const std::optional<Rational>& v) { return v ? json(v->to_string()) : json(nullptr); }

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<T>();
}

std::optional<Rational> get_rational(const json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return Rational::parse(v.get<std::string>());
}

}  // namespace

json stats_to_json(const StatsRecord& r) {
    json j;
    j["n"] = r.n;
    j["edges"] = r.edge_count;
    j["avg_degree"] = r.degrees.average;
    j["degree_variance"] = r.degrees.variance;
    json hist = json::array();
    for (auto [d, c] : r.degrees.histogram) hist.push_back(json::array({d, c}));
    j["degree_histogram"] = std::move(hist);
    j["mu"] = opt(r.mu);
    j["median_mu"] = opt(r.median_mu);
    j["nu_mean"] = r.nu_mean;
    j["nu_global"] = r.nu_global;
    j["triangles"] = r.triangles;
    j["lambda"] = opt(r.lambda);
    j["diameter"] = opt(r.diameter);
    j["radius"] = opt(r.radius);
    j["connected"] = r.connected;
    j["cliques"] = opt(r.cliques);
    j["chi"] = opt(r.chi);
    j["curvature_sum"] = opt_rational(r.curvature_sum);
    j["dimension"] = opt_rational(r.dimension);
    j["b0"] = r.b0;
    j["b1"] = r.b1;
    j["nsw"] = opt(r.nsw);
    j["provenance"] = provenance_to_json(r.provenance);
    return j;
}

StatsRecord stats_from_json(const json& j) {
    try {
        StatsRecord r;
        r.n = j.at("n").get<std::uint32_t>();
        r.edge_count = j.at("edges").get<std::uint64_t>();
        r.degrees.average = j.at("avg_degree").get<double>();
        r.degrees.variance = j.at("degree_variance").get<double>();
        for (const auto& pair : j.at("degree_histogram"))
            r.degrees.histogram[pair.at(0).get<std::uint32_t>()] = pair.at(1).get<std::uint64_t>();
        r.mu = get_opt<double>(j, "mu");
        r.median_mu = get_opt<double>(j, "median_mu");
        r.nu_mean = j.at("nu_mean").get<double>();
        r.nu_global = j.at("nu_global").get<double>();
        r.triangles = j.at("triangles").get<std::uint64_t>();
        r.lambda = get_opt<double>(j, "lambda");
        r.diameter = get_opt<std::uint32_t>(j, "diameter");
        r.radius = get_opt<std::uint32_t>(j, "radius");
        r.connected = j.at("connected").get<bool>();
        r.cliques = get_opt<std::vector<std::uint64_t>>(j, "cliques");
        r.chi = get_opt<std::int64_t>(j, "chi");
        r.curvature_sum = get_rational(j, "curvature_sum");
        r.dimension = get_rational(j, "dimension");
        r.b0 = j.at("b0").get<std::uint64_t>();
        r.b1 = j.at("b1").get<std::int64_t>();
        r.nsw = get_opt<double>(j, "nsw");
        r.provenance = provenance_from_json(j.at("provenance"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("stats JSON: ") + e.what(), 0);
    }
}

// --- CSV -----------------------------------------------------------------------

std::string csv_escape(const Cell& cell) {
    std::string text = to_string(cell);
    bool quote = false;
    if (std::holds_alternative<std::string>(cell)) {
        // Quote anything that would not read back as the same text cell.
        quote = text.find_first_of(",\"\n\r") != std::string::npos ||
                !std::holds_alternative<std::string>(parse_csv_cell(text, false));
    }
    if (!quote) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Cell parse_csv_cell(std::string_view text, bool quoted) {
    if (quoted) return std::string(text);
    if (text.empty()) return std::monostate{};
    // Numbers only in the canonical form the writer produces, so every cell
    // re-serializes to the same bytes ("007" or "1.50" stay text).
    std::int64_t i = 0;
    if (parse_int(text, i) && std::to_string(i) == text) return i;
    double d = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec == std::errc{} && ptr == text.data() + text.size() && to_string(Cell{d}) == text) return d;
    return std::string(text);
}

namespace {

void write_row(std::ostream& out, const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(cells[i]);
    }
    out << '\n';
}

// Splits one logical record starting at pos; quoted fields may span lines.
std::vector<Cell> read_record(const std::string& text, std::size_t& pos, std::size_t& lineno) {
    std::vector<Cell> cells;
    for (;;) {
        std::string field;
        bool quoted = false;
        if (pos < text.size() && text[pos] == '"') {
            quoted = true;
            ++pos;
            for (;;) {
                if (pos >= text.size()) throw ParseError("unterminated quoted field", lineno);
                const char c = text[pos++];
                if (c == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field += '"';
                        ++pos;
                    } else {
                        break;
                    }
                } else {
                    if (c == '\n') ++lineno;
                    field += c;
                }
            }
        } else {
            while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') field += text[pos++];
        }
        cells.push_back(parse_csv_cell(field, quoted));
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < text.size() && text[pos] == '\r') ++pos;
        if (pos < text.size() && text[pos] == '\n') ++pos;
        else if (pos < text.size()) throw ParseError("unexpected character after quoted field", lineno);
        ++lineno;
        return cells;
    }
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "# experiment: " << one_line(result.experiment) << '\n';
    for (const auto& [key, value] : result.provenance) out << "# " << one_line(key) << ": " << one_line(value) << '\n';
    out << "# axes: " << result.axes.size() << '\n';
    std::vector<Cell> header;
    for (const auto& c : result.columns()) header.emplace_back(c);
    write_row(out, header);
    for (const auto& row : result.rows) write_row(out, row);
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { write_sweep_csv(result, out); });
}

SweepResult read_sweep_csv(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    SweepResult result;
    std::size_t pos = 0, lineno = 1;
    std::optional<std::size_t> axes;
    while (pos < text.size() && text[pos] == '#') {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = trim(std::string_view(text).substr(pos + 1, end - pos - 1));
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("comment line without 'key: value'", lineno);
        const std::string key(trim(line.substr(0, colon)));
        const std::string value(trim(line.substr(colon + 1)));
        if (key == "experiment") {
            result.experiment = value;
        } else if (key == "axes") {
            std::size_t k = 0;
            if (!parse_int(std::string_view(value), k)) throw ParseError("bad axes count", lineno);
            axes = k;
        } else {
            result.provenance.emplace_back(key, value);
        }
        pos = end + 1;
        ++lineno;
    }
    if (pos >= text.size()) throw ParseError("missing header row", lineno);
    const auto header = read_record(text, pos, lineno);
    const std::size_t k = axes.value_or(0);
    if (k > header.size()) throw ParseError("axes count exceeds column count", lineno);
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto* name = std::get_if<std::string>(&header[i]);
        if (!name) throw ParseError("header cells must be text", lineno - 1);
        (i < k ? result.axes : result.outcomes).push_back(*name);
    }
    while (pos < text.size()) {
        const std::size_t start = lineno;
        auto row = read_record(text, pos, lineno);
        if (row.size() != header.size()) throw ParseError("row has wrong number of cells", start);
        result.rows.push_back(std::move(row));
    }
    return result;
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_sweep_csv(in);
}

}  // namespace orbnet
