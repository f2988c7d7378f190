#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbnet/graph.hpp"
#include "orbnet/metrics.hpp"
#include "orbnet/modring.hpp"
#include "orbnet/rational.hpp"
#include "orbnet/sweep.hpp"

namespace orbnet {

// Shift tuples for the quadratic family {x^2 + a_i}. Unordered tuples use
// distinct shifts a_1 < ... < a_d; ordered ones allow repetition.
enum class TupleSpace { UnorderedDistinct, OrderedWithRepetition };

std::vector<MapSpec> quadratic_maps(std::span<const Residue> shifts);

// --- connectivity ----------------------------------------------------------------

struct ConnectivityOptions {
    TupleSpace space = TupleSpace::UnorderedDistinct;
    bool allow_composite = false;
};

// Exact fraction of shift tuples of size d whose graph on Z_p is connected.
// Union-find over the generated arcs, component labels of each prefix reused
// by all its extensions; no graph is materialized. Throws DomainError for
// composite p unless allowed, for p < 2, or d outside 1..3.
Rational connectivity_probability(std::uint32_t p, unsigned d, const ConnectivityOptions& options = {});

// Components of the graph from {3x+1, 2x} for 2 <= n <= n_max.
// Columns: n | components, connected.
SweepPlan collatz_plan(std::uint32_t n_max);

// Columns: p, d | connected, total, probability.
SweepPlan connectivity_plan(std::span<const std::uint32_t> primes, unsigned d, const ConnectivityOptions& options = {});

// --- minimal diameters ---------------------------------------------------------

struct MinDiameterOptions {
    bool prune = true;  // connectivity pre-check, level-bounded BFS, degree/Moore-bound stop
    unsigned jobs = 1;
};

struct MinDiameterResult {
    std::optional<std::uint32_t> diameter;  // empty when every graph is disconnected
    std::vector<Residue> witness;           // lexicographically smallest optimal tuple
    std::uint64_t tuples = 0;               // tuples examined before pruning stopped a row
};

// Minimum diameter over unordered distinct d-tuples of quadratic shifts.
MinDiameterResult minimal_diameter(std::uint32_t n, unsigned d, const MinDiameterOptions& options = {});

// Smallest diameter any connected graph on n vertices with max degree
// delta can have (Moore bound).
std::uint32_t moore_diameter_bound(std::uint64_t n, std::uint64_t delta);

// Columns: d, n | diameter, witness.
SweepPlan min_diameter_plan(std::span<const std::uint32_t> ns, unsigned d);

// --- length-cluster expectation -------------------------------------------------

enum class LccFamily { RandomPermutations, QuadraticShifts };

struct LccOptions {
    LccFamily family = LccFamily::RandomPermutations;
    unsigned d = 2;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    bool exhaustive = false;  // QuadraticShifts only: every distinct d-subset
    unsigned jobs = 1;
};

struct LccResult {
    double mean = 0;
    double stderr_ = 0;  // sample standard deviation / sqrt(used)
    std::uint64_t used = 0;
    std::uint64_t skipped = 0;  // lambda undefined
};

// Mean of lambda = -mu / ln(nu_global) over the sampled graphs. Throws
// UndefinedError when every graph is skipped.
LccResult lcc_expectation(std::uint32_t n, const LccOptions& options);

// Columns: n | mean, stderr, used, skipped.
SweepPlan lcc_plan(std::span<const std::uint32_t> ns, const LccOptions& options);

// --- component matrix ------------------------------------------------------------

inline constexpr std::uint32_t kDefaultMatrixLimit = 1024;

struct ComponentMatrix {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> counts;  // row-major n x n

    std::uint32_t at(std::uint32_t a, std::uint32_t b) const { return counts[std::size_t{a} * n + b]; }
};

// A_ab = components of {x^2+a, x^2+b}; A_aa is the single-map count.
// Throws ResourceError when n exceeds limit.
ComponentMatrix component_matrix(std::uint32_t n, std::uint32_t limit = kDefaultMatrixLimit, unsigned jobs = 1);
std::uint32_t component_pair(std::uint32_t n, Residue a, Residue b);

// Columns: a, b | components (upper triangle including the diagonal).
SweepResult matrix_sweep(const ComponentMatrix& m);

// --- propositions -----------------------------------------------------------------

enum class IsoVerdict { Isomorphic, NotIsomorphic, Unknown };
std::string to_string(IsoVerdict v);

struct IsomorphismResult {
    IsoVerdict verdict = IsoVerdict::Unknown;
    std::vector<Vertex> mapping;  // mapping[v] for v in the first graph when isomorphic
    std::uint64_t nodes = 0;      // search nodes used
};

inline constexpr std::uint64_t kDefaultIsoBudget = 5'000'000;

// Color refinement (degree, then neighbor color multisets) followed by
// backtracking. NotIsomorphic is a proof; Unknown means the budget ran out.
IsomorphismResult find_isomorphism(const Graph& a, const Graph& b, std::uint64_t budget = kDefaultIsoBudget);

struct SymmetryVerdict {
    bool classes_disconnected = false;  // no edge joins an even and an odd vertex
    std::uint32_t even_components = 0;
    std::uint32_t odd_components = 0;
    std::optional<std::uint32_t> shift;  // translation used as the isomorphism, when n % 8 != 0
    bool commutes = false;               // T(x + shift) = T(x) + shift on the even class
    IsoVerdict isomorphic = IsoVerdict::Unknown;
    std::string method;  // "translation" or "search"

    bool holds() const { return classes_disconnected && isomorphic == IsoVerdict::Isomorphic; }
};

// Requires even n and even shifts (DomainError otherwise). For n = 2 or 6
// mod 8 the translation is x + n/2; for n = 4 mod 8 it is x + (n/4)^2 mod n,
// i.e. n/4 or 3n/4. When 8 | n a general isomorphism search runs.
SymmetryVerdict check_symmetry_proposition(std::uint32_t n, std::span<const Residue> shifts,
                                           std::uint64_t iso_budget = kDefaultIsoBudget);

// 0/1 color per vertex, or empty when the graph has an odd cycle.
std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g);

struct BipartiteVerdict {
    bool bipartite = false;
    bool parity_partition = false;  // every edge joins an even and an odd residue
    std::uint64_t triangles = 0;
    double nu_global = 0;
    std::vector<Vertex> part0, part1;  // color classes of the two-coloring

    bool holds() const { return bipartite && parity_partition && triangles == 0 && nu_global == 0; }
};

// Requires even n and odd shifts (DomainError otherwise).
BipartiteVerdict check_bipartite_proposition(std::uint32_t n, std::span<const Residue> shifts);

// --- statistics sweeps ---------------------------------------------------------------

// Columns: n | tuples, mean_clustering, n_times_clustering, mean_solutions.
// mean_solutions is the mean over tuples of #{(x, i != j) : T_i(T_i(x)) = T_j(x)}.
// Tuples are exhaustive when C(n, d) <= samples, else sampled from seed.
SweepPlan clustering_decay_plan(unsigned d, std::span<const std::uint32_t> ns, std::uint64_t samples,
                                std::uint64_t seed);

// Columns: n | prime, pairs, mean_degree, deviation, mean_self_loops, mean_coincident.
SweepPlan average_degree_plan(std::span<const std::uint32_t> ns);

struct SquaringStructure {
    std::uint32_t n = 0;
    std::uint64_t fixed_points = 0;
    std::uint64_t expected_fixed_points = 0;  // 2^omega(n)
    std::map<std::uint64_t, std::uint64_t> cycle_lengths;  // length -> number of cycles
    // Cycle lengths t that equal ord_d(2) for some odd divisor d of carmichael(n).
    std::map<std::uint64_t, bool> order_match;
};

SquaringStructure squaring_structure(std::uint32_t n);

// Columns: n | fixed_points, expected_fixed_points, cycle_lengths, orders_match.
SweepPlan squaring_plan(std::span<const std::uint32_t> ns);

// Maps {x+1} and {floor(x^alpha) + i : 2 <= i <= d}.
std::vector<MapSpec> alpha_maps(double alpha, unsigned d);

// Columns: alpha | StatsRecord summary columns (see stats_columns).
SweepPlan alpha_plan(std::uint32_t n, std::span<const double> alphas, unsigned d);

// Summary columns shared by every sweep that emits whole StatsRecords.
std::vector<std::string> stats_columns();
Row stats_cells(const StatsRecord& r);

}  // namespace orbnet
