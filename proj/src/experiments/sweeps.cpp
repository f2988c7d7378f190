// Sampled statistics: length-cluster expectation, clustering decay, average
// degree, squaring structure and the alpha family.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbnet/baselines.hpp"
#include "orbnet/experiments.hpp"
#include "orbnet/orbital.hpp"
#include "orbnet/parallel.hpp"
#include "orbnet/rng.hpp"

namespace orbnet {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All increasing d-tuples over [0, n) in lexicographic order.
std::vector<std::vector<Residue>> all_tuples(std::uint32_t n, unsigned d) {
    std::vector<std::vector<Residue>> out;
    if (d > n) return out;
    std::vector<Residue> t(d);
    std::iota(t.begin(), t.end(), Residue{0});
    for (;;) {
        out.push_back(t);
        std::size_t i = d;
        while (i > 0 && t[i - 1] == n - (d - i + 1)) --i;
        if (i == 0) return out;
        ++t[i - 1];
        for (std::size_t j = i; j < d; ++j) t[j] = t[j - 1] + 1;
    }
}

// d distinct shifts drawn by rejection, returned sorted.
std::vector<Residue> sample_tuple(Rng& rng, std::uint32_t n, unsigned d) {
    std::vector<Residue> t;
    while (t.size() < d) {
        const Residue s = rng.below(n);
        if (std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
    }
    std::sort(t.begin(), t.end());
    return t;
}

std::optional<double> lambda_of(const Graph& g) {
    if (g.edge_count() == 0) return std::nullopt;
    const double nu = clustering(g).global;
    if (!(nu > 0 && nu < 1)) return std::nullopt;
    return length_cluster(distance_stats(g).mu, nu);
}

}  // namespace

// --- length-cluster expectation -------------------------------------------------

LccResult lcc_expectation(std::uint32_t n, const LccOptions& o) {
    if (n < 2) throw DomainError("lcc expectation needs n >= 2");
    if (o.d < 1) throw DomainError("need at least one generator");
    std::vector<std::vector<Residue>> tuples;
    std::size_t count = o.samples;
    if (o.family == LccFamily::QuadraticShifts) {
        if (o.d > n) throw DomainError("not enough distinct shifts");
        if (o.exhaustive) {
            tuples = all_tuples(n, o.d);
            count = tuples.size();
        }
    } else if (o.exhaustive) {
        throw DomainError("exhaustive enumeration is only defined for quadratic shifts");
    }
    if (count == 0) throw DomainError("need at least one sample");

    std::vector<std::optional<double>> values(count);
    parallel_for(count, o.jobs, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(o.seed, i);
        Graph g;
        if (o.family == LccFamily::RandomPermutations) {
            g = generate_baseline({RandomPermutations{n, o.d}, seed});
        } else if (o.exhaustive) {
            g = build_orbital_graph(Modulus(n), quadratic_maps(tuples[i]));
        } else {
            Rng rng(seed);
            g = build_orbital_graph(Modulus(n), quadratic_maps(sample_tuple(rng, n, o.d)));
        }
        values[i] = lambda_of(g);
    });

    LccResult r;
    double sum = 0;
    for (const auto& v : values) {
        if (!v) {
            ++r.skipped;
            continue;
        }
        ++r.used;
        sum += *v;
    }
    if (r.used == 0) throw UndefinedError("lambda is undefined for every sampled graph");
    r.mean = sum / static_cast<double>(r.used);
    if (r.used > 1) {
        double sq = 0;
        for (const auto& v : values)
            if (v) sq += (*v - r.mean) * (*v - r.mean);
        r.stderr_ = std::sqrt(sq / static_cast<double>(r.used - 1)) / std::sqrt(static_cast<double>(r.used));
    }
    return r;
}

SweepPlan lcc_plan(std::span<const std::uint32_t> ns, const LccOptions& options) {
    SweepPlan plan;
    plan.experiment = "lcc";
    plan.axes = {"n"};
    plan.outcomes = {"mean", "stderr", "used", "skipped"};
    plan.provenance = {{"version", version_string()},
                       {"family", options.family == LccFamily::RandomPermutations ? "perm" : "quadratic"},
                       {"d", std::to_string(options.d)},
                       {"samples", options.exhaustive ? "exhaustive" : std::to_string(options.samples)},
                       {"seed", std::to_string(options.seed)}};
    for (auto n : ns) plan.tasks.push_back({std::int64_t{n}});
    LccOptions inner = options;
    inner.jobs = 1;  // the sweep runner parallelizes across rows
    plan.evaluate = [inner](const Row& params) -> Row {
        const auto n = static_cast<std::uint32_t>(as_int(params[0]));
        try {
            const auto r = lcc_expectation(n, inner);
            return {r.mean, r.stderr_, static_cast<std::int64_t>(r.used), static_cast<std::int64_t>(r.skipped)};
        } catch (const UndefinedError&) {
            const auto total = static_cast<std::int64_t>(inner.exhaustive ? binomial(n, inner.d) : inner.samples);
            return {std::monostate{}, std::monostate{}, std::int64_t{0}, total};
        }
    };
    return plan;
}

// --- clustering decay ---------------------------------------------------------------

SweepPlan clustering_decay_plan(unsigned d, std::span<const std::uint32_t> ns, std::uint64_t samples,
                                std::uint64_t seed) {
    if (d < 1) throw DomainError("need at least one generator");
    SweepPlan plan;
    plan.experiment = "clustering_decay";
    plan.axes = {"n"};
    plan.outcomes = {"tuples", "mean_clustering", "n_times_clustering", "mean_solutions"};
    plan.provenance = {{"version", version_string()},
                       {"d", std::to_string(d)},
                       {"samples", std::to_string(samples)},
                       {"seed", std::to_string(seed)}};
    for (auto n : ns) plan.tasks.push_back({std::int64_t{n}});
    plan.evaluate = [d, samples, seed](const Row& params) -> Row {
        const auto n = static_cast<std::uint32_t>(as_int(params[0]));
        if (n < d) throw DomainError("not enough distinct shifts for n = " + std::to_string(n));
        std::vector<std::vector<Residue>> tuples;
        if (binomial(n, d) <= samples) {
            tuples = all_tuples(n, d);
        } else {
            Rng rng(derive_seed(seed, n));
            for (std::uint64_t i = 0; i < samples; ++i) tuples.push_back(sample_tuple(rng, n, d));
        }
        const auto squares = square_table(n);
        const Modulus m(n);
        double clustering_sum = 0, solution_sum = 0;
        for (const auto& t : tuples) {
            clustering_sum += clustering(build_orbital_graph(m, quadratic_maps(t))).global;
            std::uint64_t solutions = 0;
            for (std::uint32_t x = 0; x < n; ++x)
                for (std::size_t i = 0; i < t.size(); ++i) {
                    const Residue ti = m.add(squares[x], t[i]);
                    const Residue tti = m.add(squares[ti], t[i]);
                    for (std::size_t j = 0; j < t.size(); ++j)
                        if (j != i && tti == m.add(squares[x], t[j])) ++solutions;
                }
            solution_sum += static_cast<double>(solutions);
        }
        const double k = static_cast<double>(tuples.size());
        const double mean = clustering_sum / k;
        return {static_cast<std::int64_t>(tuples.size()), mean, mean * n, solution_sum / k};
    };
    return plan;
}

// --- average degree ---------------------------------------------------------------

SweepPlan average_degree_plan(std::span<const std::uint32_t> ns) {
    SweepPlan plan;
    plan.experiment = "average_degree";
    plan.axes = {"n"};
    plan.outcomes = {"prime", "pairs", "mean_degree", "deviation", "mean_self_loops", "mean_coincident"};
    plan.provenance = {{"version", version_string()}, {"tuples", "unordered-distinct"}};
    for (auto n : ns) plan.tasks.push_back({std::int64_t{n}});
    plan.evaluate = [](const Row& params) -> Row {
        const auto n = static_cast<std::uint32_t>(as_int(params[0]));
        if (n < 2) throw DomainError("average degree sweep needs n >= 2");
        const Modulus m(n);
        double degree_sum = 0, loops = 0, coincident = 0;
        std::uint64_t pairs = 0;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) {
                const std::vector<MapSpec> maps = {Quadratic{a}, Quadratic{b}};
                const ArcCensus c = arc_census(digraph_view(m, maps));
                degree_sum += 2.0 * static_cast<double>(c.distinct_edges) / n;
                loops += static_cast<double>(c.self_loops);
                coincident += static_cast<double>(c.coincident);
                ++pairs;
            }
        const double k = static_cast<double>(pairs);
        const double mean = degree_sum / k;
        return {std::int64_t{is_prime(n)}, static_cast<std::int64_t>(pairs), mean, mean - 4.0, loops / k,
                coincident / k};
    };
    return plan;
}

// --- squaring structure -------------------------------------------------------------

SquaringStructure squaring_structure(std::uint32_t n) {
    if (n < 2) throw DomainError("squaring structure needs n >= 2");
    SquaringStructure s;
    s.n = n;
    const auto sq = square_table(n);
    // Walk every orbit; a walk that runs into its own trail closes a cycle.
    std::vector<std::uint32_t> state(n, 0);  // 0 unseen, else walk id + 1 (done walks are marked done)
    std::vector<bool> done(n, false);
    for (std::uint32_t start = 0; start < n; ++start) {
        if (done[start]) continue;
        std::uint32_t x = start;
        while (!done[x] && state[x] != start + 1) {
            state[x] = start + 1;
            x = sq[x];
        }
        if (!done[x]) {  // x is on a new cycle
            std::uint64_t len = 0;
            std::uint32_t y = x;
            do {
                ++len;
                y = sq[y];
            } while (y != x);
            ++s.cycle_lengths[len];
        }
        for (std::uint32_t y = start; !done[y]; y = sq[y]) done[y] = true;
    }
    s.fixed_points = s.cycle_lengths.count(1) ? s.cycle_lengths.at(1) : 0;
    const auto f = factor_summary(n);
    s.expected_fixed_points = std::uint64_t{1} << f.omega;

    std::vector<std::uint64_t> orders;  // ord_d(2) over odd divisors d of carmichael(n)
    std::uint64_t odd = f.carmichael;
    while (odd % 2 == 0) odd /= 2;
    for (std::uint64_t d = 1; d * d <= odd; ++d) {
        if (odd % d != 0) continue;
        for (std::uint64_t e : {d, odd / d}) orders.push_back(e == 1 ? 1 : multiplicative_order(2, Modulus(e)));
    }
    for (auto [len, count] : s.cycle_lengths)
        s.order_match[len] = std::find(orders.begin(), orders.end(), len) != orders.end();
    return s;
}

SweepPlan squaring_plan(std::span<const std::uint32_t> ns) {
    SweepPlan plan;
    plan.experiment = "squaring";
    plan.axes = {"n"};
    plan.outcomes = {"fixed_points", "expected_fixed_points", "cycle_lengths", "orders_match"};
    plan.provenance = {{"version", version_string()}};
    for (auto n : ns) plan.tasks.push_back({std::int64_t{n}});
    plan.evaluate = [](const Row& params) -> Row {
        const auto s = squaring_structure(static_cast<std::uint32_t>(as_int(params[0])));
        std::string lengths;
        bool all = true;
        for (auto [len, count] : s.cycle_lengths) {
            if (!lengths.empty()) lengths += ' ';
            lengths += std::to_string(len) + ':' + std::to_string(count);
            all = all && s.order_match.at(len);
        }
        return {static_cast<std::int64_t>(s.fixed_points), static_cast<std::int64_t>(s.expected_fixed_points), lengths,
                std::int64_t{all}};
    };
    return plan;
}

// --- alpha family -----------------------------------------------------------------

std::vector<MapSpec> alpha_maps(double alpha, unsigned d) {
    std::vector<MapSpec> maps = {Affine{1, 1}};
    for (unsigned i = 2; i <= d; ++i) maps.push_back(FloorPower{alpha, i});
    return maps;
}

std::vector<std::string> stats_columns() {
    return {"vertices", "edges",  "avg_degree",    "mu",        "median_mu", "nu_mean", "nu_global", "lambda",
            "diameter", "connected", "triangles",  "chi",       "curvature_sum", "dimension", "b0", "b1", "nsw"};
}

Row stats_cells(const StatsRecord& r) {
    auto real = [](const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; };
    auto rational = [](const std::optional<Rational>& v) { return v ? Cell{v->to_string()} : Cell{}; };
    return {std::int64_t{r.n},
            static_cast<std::int64_t>(r.edge_count),
            r.degrees.average,
            real(r.mu),
            real(r.median_mu),
            r.nu_mean,
            r.nu_global,
            real(r.lambda),
            r.diameter ? Cell{std::int64_t{*r.diameter}} : Cell{},
            std::int64_t{r.connected},
            static_cast<std::int64_t>(r.triangles),
            r.chi ? Cell{*r.chi} : Cell{},
            rational(r.curvature_sum),
            rational(r.dimension),
            static_cast<std::int64_t>(r.b0),
            r.b1,
            real(r.nsw)};
}

SweepPlan alpha_plan(std::uint32_t n, std::span<const double> alphas, unsigned d) {
    if (d < 1) throw DomainError("need at least one generator");
    SweepPlan plan;
    plan.experiment = "alpha";
    plan.axes = {"alpha"};
    plan.outcomes = stats_columns();
    plan.provenance = {{"version", version_string()}, {"n", std::to_string(n)}, {"d", std::to_string(d)}};
    for (double a : alphas) plan.tasks.push_back({a});
    plan.evaluate = [n, d](const Row& params) -> Row {
        const Graph g = build_orbital_graph(Modulus(n), alpha_maps(as_double(params[0]), d));
        return stats_cells(compute_stats(g));
    };
    return plan;
}

}  // namespace orbnet
