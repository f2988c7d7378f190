#include "orbnet/baselines.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "orbnet/orbital.hpp"
#include "orbnet/rng.hpp"

namespace orbnet {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<std::string> split_args(std::string_view text, std::string& name) {
    std::string compact;
    for (char c : text)
        if (c != ' ' && c != '\t') compact.push_back(c);
    const auto open = compact.find('(');
    if (open == std::string::npos || compact.back() != ')') throw ParseError("baseline spec must look like name(args)", 0);
    name = compact.substr(0, open);
    std::vector<std::string> args;
    std::string inner = compact.substr(open + 1, compact.size() - open - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
        const auto end = std::min(inner.find(',', start), inner.size());
        args.push_back(inner.substr(start, end - start));
        start = end + 1;
    }
    return args;
}

template <class T>
T parse_number(const std::string& s, std::size_t index) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError("bad baseline argument '" + s + "'", index);
    }
    return value;
}

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
}

Graph erdos_renyi(const ErdosRenyi& m, Rng& rng) {
    check_probability(m.p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m.n; ++u)
        for (Vertex v = u + 1; v < m.n; ++v)
            if (rng.bernoulli(m.p)) edges.emplace_back(u, v);
    return Graph::from_edges(m.n, edges);
}

Graph watts_strogatz(const WattsStrogatz& m, Rng& rng) {
    check_probability(m.p);
    if (m.k % 2 != 0 || m.k == 0 || m.k >= m.n) throw DomainError("Watts-Strogatz needs even k with 0 < k < n");
    std::vector<std::set<Vertex>> adj(m.n);
    for (Vertex u = 0; u < m.n; ++u)
        for (std::uint32_t j = 1; j <= m.k / 2; ++j) {
            const Vertex v = (u + j) % m.n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    for (std::uint32_t j = 1; j <= m.k / 2; ++j) {
        for (Vertex u = 0; u < m.n; ++u) {
            const Vertex v = (u + j) % m.n;
            if (!rng.bernoulli(m.p)) continue;
            if (adj[u].size() >= m.n - 1) continue;
            Vertex w = static_cast<Vertex>(rng.below(m.n));
            while (w == u || adj[u].contains(w)) w = static_cast<Vertex>(rng.below(m.n));
            adj[u].erase(v);
            adj[v].erase(u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m.n; ++u)
        for (Vertex v : adj[u])
            if (u < v) edges.emplace_back(u, v);
    return Graph::from_edges(m.n, edges);
}

Graph barabasi_albert(const BarabasiAlbert& m, Rng& rng) {
    if (m.k < 1 || m.k + 1 > m.n) throw DomainError("Barabasi-Albert needs 1 <= k < n");
    std::vector<Edge> edges;
    std::vector<Vertex> endpoints;  // each vertex repeated once per incident edge
    for (Vertex u = 0; u <= m.k; ++u)
        for (Vertex v = u + 1; v <= m.k; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<Vertex> targets;
    for (Vertex u = m.k + 1; u < m.n; ++u) {
        targets.clear();
        while (targets.size() < m.k) {
            const Vertex t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (Vertex t : targets) {
            edges.emplace_back(u, t);
            endpoints.push_back(u);
            endpoints.push_back(t);
        }
    }
    return Graph::from_edges(m.n, edges);
}

Graph random_permutations(const RandomPermutations& m, Rng& rng) {
    if (m.d < 1 || m.n < 1) throw DomainError("random permutation model needs n >= 1 and d >= 1");
    std::vector<MapSpec> specs;
    for (std::uint32_t i = 0; i < m.d; ++i) specs.push_back(Permutation{rng.next()});
    return build_orbital_graph(Modulus(m.n), specs);
}

}  // namespace

BaselineModel parse_baseline_model(std::string_view text) {
    std::string name;
    const auto args = split_args(text, name);
    auto want = [&](std::size_t count) {
        if (args.size() != count) throw ParseError(name + " takes " + std::to_string(count) + " arguments", 0);
    };
    if (name == "er") {
        want(2);
        return ErdosRenyi{parse_number<std::uint32_t>(args[0], 0), parse_number<double>(args[1], 1)};
    }
    if (name == "ws") {
        want(3);
        return WattsStrogatz{parse_number<std::uint32_t>(args[0], 0), parse_number<std::uint32_t>(args[1], 1),
                             parse_number<double>(args[2], 2)};
    }
    if (name == "ba") {
        want(2);
        return BarabasiAlbert{parse_number<std::uint32_t>(args[0], 0), parse_number<std::uint32_t>(args[1], 1)};
    }
    if (name == "perm") {
        want(2);
        return RandomPermutations{parse_number<std::uint32_t>(args[0], 0), parse_number<std::uint32_t>(args[1], 1)};
    }
    throw ParseError("unknown baseline model '" + name + "'", 0);
}

std::string to_string(const BaselineModel& model) {
    return std::visit(
        Overloaded{
            [](const ErdosRenyi& m) { return "er(" + std::to_string(m.n) + "," + format_real(m.p) + ")"; },
            [](const WattsStrogatz& m) {
                return "ws(" + std::to_string(m.n) + "," + std::to_string(m.k) + "," + format_real(m.p) + ")";
            },
            [](const BarabasiAlbert& m) { return "ba(" + std::to_string(m.n) + "," + std::to_string(m.k) + ")"; },
            [](const RandomPermutations& m) { return "perm(" + std::to_string(m.n) + "," + std::to_string(m.d) + ")"; },
        },
        model);
}

Graph generate_baseline(const BaselineSpec& spec) {
    Rng rng(spec.seed);
    Graph g = std::visit(
        Overloaded{
            [&](const ErdosRenyi& m) { return erdos_renyi(m, rng); },
            [&](const WattsStrogatz& m) { return watts_strogatz(m, rng); },
            [&](const BarabasiAlbert& m) { return barabasi_albert(m, rng); },
            [&](const RandomPermutations& m) { return random_permutations(m, rng); },
        },
        spec.model);
    Provenance prov = g.provenance();
    prov.seed = spec.seed;
    prov.source = to_string(spec.model);
    return g.with_provenance(std::move(prov));
}

}  // namespace orbnet
