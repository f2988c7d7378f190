#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "orbnet/graph.hpp"
#include "orbnet/rational.hpp"

namespace orbnet {

// Default enumeration budgets; both count visited search nodes.
inline constexpr std::uint64_t kDefaultCliqueBudget = 50'000'000;
inline constexpr std::uint64_t kDefaultDimensionBudget = 20'000'000;

// --- degrees ----------------------------------------------------------------

struct DegreeStats {
    double average = 0;   // 2|E| / |V|
    double variance = 0;  // population variance of the degree sequence
    std::map<std::uint32_t, std::uint64_t> histogram;
};

DegreeStats degree_stats(const Graph& g);

// --- distances ----------------------------------------------------------------

// Which vertices enter the characteristic path length.
enum class PathLengthScope {
    AllVertices,       // every vertex with at least one reachable partner
    LargestComponent,  // only the largest connected component
};

struct DistanceStats {
    double mu = 0;        // mean over vertices of the mean distance to reachable others
    double median = 0;    // median of d(x, y) over ordered reachable pairs x != y
    std::uint32_t diameter = 0;  // largest finite eccentricity
    std::uint32_t radius = 0;    // smallest eccentricity of a non-isolated vertex
    bool connected = false;
    double mean_second_neighbors = 0;  // average |{y : d(x, y) = 2}|
};

// One all-pairs BFS sweep. Throws UndefinedError for a graph with no edges.
DistanceStats distance_stats(const Graph& g, PathLengthScope scope = PathLengthScope::AllVertices);

struct PathLength {
    double mean = 0;
    double median = 0;
};

PathLength characteristic_path_length(const Graph& g, PathLengthScope scope = PathLengthScope::AllVertices);

struct Diameter {
    std::uint32_t value = 0;
    bool connected = false;
};

// Max over components; callers treat !connected as infinite where needed.
Diameter diameter(const Graph& g);

// --- clustering ---------------------------------------------------------------

enum class LowDegreePolicy {
    CountAsZero,  // vertices of degree < 2 contribute 0 to the mean
    Exclude,      // they are left out of the mean
};

struct Clustering {
    double mean_local = 0;  // nu_mean
    double global = 0;      // nu_global = 3 * triangles / paths of length two
    std::uint64_t triangles = 0;
};

Clustering clustering(const Graph& g, LowDegreePolicy policy = LowDegreePolicy::CountAsZero);
std::uint64_t triangle_count(const Graph& g);

// lambda = -mu / ln(nu). Throws UndefinedError unless 0 < nu < 1.
double length_cluster(double mu, double nu);

// --- cliques and topology -----------------------------------------------------

struct CliqueVector {
    std::vector<std::uint64_t> counts;  // counts[k] = number of K_{k+1}; trailing zeros trimmed
    bool complete = true;               // false if cliques beyond k_max exist
};

// Recursive extension over sorted neighbor intersections. Worst case is
// exponential in the clique number; throws ResourceError after node_budget
// cliques have been visited.
CliqueVector clique_vector(const Graph& g, unsigned k_max = 64, std::uint64_t node_budget = kDefaultCliqueBudget);

// Sum of (-1)^k c_k. Throws DomainError for a truncated vector.
std::int64_t euler_characteristic(const CliqueVector& cliques);

// K(x) = sum_{k>=0} (-1)^k V_{k-1}(x) / (k+1) with V_{-1} = 1 and V_j the
// number of K_{j+1} in the unit sphere S(x).
Rational curvature(const Graph& g, Vertex x);
Rational curvature_sum(const Graph& g);

// dim(empty) = -1, dim(H) = 1 + mean over x in H of dim(S_H(x)). Memoized on
// vertex sets; throws ResourceError after budget recursive evaluations.
Rational inductive_dimension(const Graph& g, std::uint64_t budget = kDefaultDimensionBudget);
Rational inductive_dimension(const Graph& g, std::span<const Vertex> induced,
                             std::uint64_t budget = kDefaultDimensionBudget);

struct Betti {
    std::uint64_t b0 = 0;  // connected components
    std::int64_t b1 = 0;   // cycle rank c1 - c0 + b0
};

Betti betti(const Graph& g);

// 1 + ln(n/d) / ln(d2/d). Throws UndefinedError when d = 0 or d2 <= d.
double nsw_estimate(double n, double avg_degree, double avg_second_neighbors);
double nsw_estimate(const Graph& g);

// --- bundle -------------------------------------------------------------------

enum class ClusteringConvention { Global, MeanLocal };

struct StatsOptions {
    PathLengthScope scope = PathLengthScope::AllVertices;
    LowDegreePolicy low_degree = LowDegreePolicy::CountAsZero;
    // nu_global reproduces the reported lambda values, so it is the default.
    ClusteringConvention lambda_from = ClusteringConvention::Global;
    bool topology = true;  // cliques, chi, curvature, dimension
    std::uint64_t clique_budget = kDefaultCliqueBudget;
    std::uint64_t dimension_budget = kDefaultDimensionBudget;
};

struct StatsRecord {
    std::uint32_t n = 0;
    std::uint64_t edge_count = 0;
    DegreeStats degrees;
    std::uint64_t b0 = 0;
    std::int64_t b1 = 0;
    std::optional<std::uint32_t> diameter;
    std::optional<std::uint32_t> radius;
    bool connected = false;
    std::optional<double> mu;
    std::optional<double> median_mu;
    double nu_mean = 0;
    double nu_global = 0;
    std::uint64_t triangles = 0;
    std::optional<double> lambda;
    std::optional<std::vector<std::uint64_t>> cliques;
    std::optional<std::int64_t> chi;
    std::optional<Rational> curvature_sum;
    std::optional<Rational> dimension;
    std::optional<double> nsw;
    Provenance provenance;
};

// Undefined quantities and exceeded budgets are left empty rather than thrown.
StatsRecord compute_stats(const Graph& g, const StatsOptions& options = {});

}  // namespace orbnet
