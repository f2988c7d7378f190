#include "orbnet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "orbnet/kernels.hpp"

namespace orbnet {
namespace {

// Median of a distance multiset given as histogram[d] = count.
double histogram_median(const std::vector<std::uint64_t>& histogram) {
    std::uint64_t total = 0;
    for (auto c : histogram) total += c;
    if (total == 0) return 0;
    auto value_at = [&](std::uint64_t rank) {
        std::uint64_t seen = 0;
        for (std::size_t d = 0; d < histogram.size(); ++d) {
            seen += histogram[d];
            if (seen > rank) return static_cast<double>(d);
        }
        return static_cast<double>(histogram.size() - 1);
    };
    if (total % 2 == 1) return value_at(total / 2);
    return (value_at(total / 2 - 1) + value_at(total / 2)) / 2.0;
}

std::vector<Vertex> largest_component(const Graph& g) {
    const auto labels = component_labels(g);
    std::vector<std::uint32_t> sizes;
    for (auto l : labels) {
        if (l >= sizes.size()) sizes.resize(l + 1, 0);
        ++sizes[l];
    }
    const auto best = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (labels[v] == best) out.push_back(v);
    }
    return out;
}

}  // namespace

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    const Vertex n = g.vertex_count();
    if (n == 0) return s;
    s.average = 2.0 * static_cast<double>(g.edge_count()) / n;
    double sq = 0;
    for (Vertex v = 0; v < n; ++v) {
        const double dev = g.degree(v) - s.average;
        sq += dev * dev;
        ++s.histogram[g.degree(v)];
    }
    s.variance = sq / n;
    return s;
}

DistanceStats distance_stats(const Graph& g, PathLengthScope scope) {
    if (g.edge_count() == 0) throw UndefinedError("path lengths are undefined on a graph without edges");
    if (scope == PathLengthScope::LargestComponent) {
        const auto keep = largest_component(g);
        if (keep.size() != g.vertex_count()) {
            DistanceStats s = distance_stats(induced_subgraph(g, keep), PathLengthScope::AllVertices);
            s.connected = false;
            return s;
        }
    }

    kernels::DistanceAccumulator acc;
    kernels::all_pairs_bfs(g.csr(), acc);

    const Vertex n = g.vertex_count();
    DistanceStats s;
    double mu_sum = 0;
    std::uint32_t contributing = 0;
    std::uint64_t second = 0;
    s.radius = std::numeric_limits<std::uint32_t>::max();
    s.connected = true;
    for (Vertex v = 0; v < n; ++v) {
        second += acc.at_distance_two[v];
        if (acc.reached[v] != n - 1) s.connected = false;
        if (acc.reached[v] == 0) continue;
        mu_sum += static_cast<double>(acc.distance_sum[v]) / acc.reached[v];
        ++contributing;
        s.diameter = std::max(s.diameter, acc.eccentricity[v]);
        s.radius = std::min(s.radius, acc.eccentricity[v]);
    }
    s.mu = mu_sum / contributing;
    s.median = histogram_median(acc.histogram);
    s.mean_second_neighbors = static_cast<double>(second) / n;
    return s;
}

PathLength characteristic_path_length(const Graph& g, PathLengthScope scope) {
    const DistanceStats s = distance_stats(g, scope);
    return {s.mu, s.median};
}

Diameter diameter(const Graph& g) {
    const DistanceStats s = distance_stats(g);
    return {s.diameter, s.connected};
}

std::uint64_t triangle_count(const Graph& g) { return clustering(g).triangles; }

Clustering clustering(const Graph& g, LowDegreePolicy policy) {
    const Vertex n = g.vertex_count();
    std::vector<std::uint64_t> local(n, 0);
    std::uint64_t triangles = 0;
    std::vector<Vertex> common;
    for (Vertex v = 0; v < n; ++v) {
        const auto nv = g.neighbors(v);
        const auto fv = std::upper_bound(nv.begin(), nv.end(), v);
        for (auto it = fv; it != nv.end(); ++it) {
            const Vertex u = *it;
            const auto nu = g.neighbors(u);
            const auto fu = std::upper_bound(nu.begin(), nu.end(), u);
            common.clear();
            std::set_intersection(it + 1, nv.end(), fu, nu.end(), std::back_inserter(common));
            for (Vertex w : common) {
                ++local[v];
                ++local[u];
                ++local[w];
                ++triangles;
            }
        }
    }

    Clustering c;
    c.triangles = triangles;
    double local_sum = 0;
    std::uint32_t counted = 0;
    std::uint64_t wedges = 0;
    for (Vertex v = 0; v < n; ++v) {
        const std::uint64_t d = g.degree(v);
        const std::uint64_t pairs = d * (d - (d > 0 ? 1 : 0)) / 2;
        wedges += pairs;
        if (d < 2) {
            if (policy == LowDegreePolicy::CountAsZero) ++counted;
            continue;
        }
        local_sum += static_cast<double>(local[v]) / static_cast<double>(pairs);
        ++counted;
    }
    c.mean_local = counted == 0 ? 0.0 : local_sum / counted;
    c.global = wedges == 0 ? 0.0 : 3.0 * static_cast<double>(triangles) / static_cast<double>(wedges);
    return c;
}

double length_cluster(double mu, double nu) {
    if (!(nu > 0.0 && nu < 1.0)) throw UndefinedError("lambda is undefined for nu outside (0, 1)");
    return -mu / std::log(nu);
}

Betti betti(const Graph& g) {
    Betti b;
    b.b0 = component_count(g);
    b.b1 = static_cast<std::int64_t>(g.edge_count()) - static_cast<std::int64_t>(g.vertex_count()) +
           static_cast<std::int64_t>(b.b0);
    return b;
}

double nsw_estimate(double n, double avg_degree, double avg_second_neighbors) {
    if (!(avg_degree > 0) || !(avg_second_neighbors > avg_degree)) {
        throw UndefinedError("NSW estimate needs 0 < d < d2");
    }
    return 1.0 + std::log(n / avg_degree) / std::log(avg_second_neighbors / avg_degree);
}

double nsw_estimate(const Graph& g) {
    const DistanceStats s = distance_stats(g);
    return nsw_estimate(g.vertex_count(), degree_stats(g).average, s.mean_second_neighbors);
}

StatsRecord compute_stats(const Graph& g, const StatsOptions& options) {
    StatsRecord r;
    r.n = g.vertex_count();
    r.edge_count = g.edge_count();
    r.provenance = g.provenance();
    r.degrees = degree_stats(g);
    const Betti b = betti(g);
    r.b0 = b.b0;
    r.b1 = b.b1;
    r.connected = r.b0 <= 1;

    const Clustering c = clustering(g, options.low_degree);
    r.nu_mean = c.mean_local;
    r.nu_global = c.global;
    r.triangles = c.triangles;

    if (g.edge_count() > 0) {
        const DistanceStats global = distance_stats(g, PathLengthScope::AllVertices);
        r.diameter = global.diameter;
        r.radius = global.radius;
        const DistanceStats scoped =
            options.scope == PathLengthScope::AllVertices ? global : distance_stats(g, options.scope);
        r.mu = scoped.mu;
        r.median_mu = scoped.median;
        const double nu = options.lambda_from == ClusteringConvention::Global ? r.nu_global : r.nu_mean;
        if (nu > 0 && nu < 1) r.lambda = length_cluster(*r.mu, nu);
        if (r.degrees.average > 0 && global.mean_second_neighbors > r.degrees.average) {
            r.nsw = nsw_estimate(r.n, r.degrees.average, global.mean_second_neighbors);
        }
    }

    if (options.topology) {
        try {
            const CliqueVector cv = clique_vector(g, 64, options.clique_budget);
            r.cliques = cv.counts;
            if (cv.complete) r.chi = euler_characteristic(cv);
            r.curvature_sum = curvature_sum(g);
        } catch (const ResourceError&) {
        }
        try {
            r.dimension = inductive_dimension(g, options.dimension_budget);
        } catch (const ResourceError&) {
        }
    }
    return r;
}

}  // namespace orbnet
