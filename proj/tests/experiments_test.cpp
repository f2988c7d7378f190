#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "orbnet/experiments.hpp"
#include "orbnet/formats.hpp"
#include "orbnet/metrics.hpp"
#include "orbnet/orbital.hpp"

using namespace orbnet;

namespace {

// Quadratic-shift edges built by hand, bypassing the library's map tables.
std::vector<Edge> quadratic_edges(std::uint32_t n, const std::vector<std::uint32_t>& shifts) {
    std::vector<Edge> e;
    for (std::uint32_t a : shifts)
        for (std::uint64_t x = 0; x < n; ++x) e.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>((x * x + a) % n));
    return e;
}

std::uint32_t oracle_diameter(std::uint32_t n, const std::vector<std::uint32_t>& shifts) {
    const auto d = oracle::floyd_warshall(oracle::adjacency(n, quadratic_edges(n, shifts)));
    std::uint32_t best = 0;
    for (auto& row : d)
        for (auto v : row) best = std::max(best, v);
    return best;
}

}  // namespace

TEST_CASE("connectivity probability: hand examples") {
    CHECK(connectivity_probability(2, 1) == Rational(1, 2));
    CHECK(connectivity_probability(2, 2) == Rational(1));
    CHECK_THROWS_AS(connectivity_probability(9, 1), DomainError);
    CHECK_THROWS_AS(connectivity_probability(1, 1), DomainError);
    CHECK_THROWS_AS(connectivity_probability(7, 4), DomainError);
    CHECK_NOTHROW(connectivity_probability(9, 1, {TupleSpace::UnorderedDistinct, true}));
}

TEST_CASE("connectivity probability equals BFS on materialized graphs") {
    for (std::uint32_t p = 2; p <= 31; ++p) {
        if (!is_prime(p)) continue;
        for (unsigned d = 1; d <= 3 && d <= p; ++d) {
            std::uint64_t connected = 0, total = 0;
            std::vector<std::uint32_t> t(d);
            for (std::uint32_t i = 0; i < d; ++i) t[i] = i;
            for (;;) {
                ++total;
                connected += oracle::components_by_bfs(oracle::adjacency(p, quadratic_edges(p, t))) == 1;
                int i = static_cast<int>(d) - 1;
                while (i >= 0 && t[i] == p - d + i) --i;
                if (i < 0) break;
                ++t[i];
                for (unsigned j = i + 1; j < d; ++j) t[j] = t[j - 1] + 1;
            }
            CAPTURE(p);
            CAPTURE(d);
            CHECK(connectivity_probability(p, d) ==
                  Rational(static_cast<std::int64_t>(connected), static_cast<std::int64_t>(total)));
        }
    }
}

TEST_CASE("ordered tuples with repetition") {
    for (std::uint32_t n : {5u, 7u, 8u}) {
        std::uint64_t connected = 0;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                connected += oracle::components_by_bfs(oracle::adjacency(n, quadratic_edges(n, {a, b}))) == 1;
        const ConnectivityOptions opts{TupleSpace::OrderedWithRepetition, true};
        CHECK(connectivity_probability(n, 2, opts) ==
              Rational(static_cast<std::int64_t>(connected), static_cast<std::int64_t>(n) * n));
    }
}

TEST_CASE("connectivity plan rows") {
    const std::vector<std::uint32_t> primes = {2, 3, 5, 7, 11, 13};
    const auto r = run_sweep(connectivity_plan(primes, 1));
    CHECK(r.rows.size() == 6);
    CHECK(as_int(r.at(0, "connected")) == 1);
    CHECK(as_int(r.at(0, "total")) == 2);
}

TEST_CASE("collatz maps connect every small modulus") {
    const auto r = run_sweep(collatz_plan(300));
    CHECK(r.rows.size() == 299);
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(as_int(r.at(i, "connected")) == 1);
    CHECK(run_sweep(collatz_plan(2)).rows.size() == 1);
    CHECK_THROWS_AS(collatz_plan(1), DomainError);
}

TEST_CASE("moore bound") {
    CHECK(moore_diameter_bound(2, 1) == 1);
    CHECK(moore_diameter_bound(11, 2) == 5);
    CHECK(moore_diameter_bound(10, 3) == 2);  // Petersen graph
    CHECK(moore_diameter_bound(11, 3) == 3);
    CHECK(moore_diameter_bound(1, 4) == 0);
}

TEST_CASE("minimal diameter: pruned equals exhaustive") {
    for (unsigned d = 1; d <= 2; ++d)
        for (std::uint32_t n = 2; n <= 60; ++n) {
            if (d > n) continue;
            const auto pruned = minimal_diameter(n, d);
            const auto full = minimal_diameter(n, d, {false, 1});
            CAPTURE(n);
            CAPTURE(d);
            CHECK(pruned.diameter == full.diameter);
            CHECK(pruned.witness == full.witness);
        }
}

TEST_CASE("minimal diameter: witness checked against floyd-warshall") {
    for (std::uint32_t n = 2; n <= 24; ++n) {
        const auto r = minimal_diameter(n, 2);
        REQUIRE(r.diameter);
        const std::vector<std::uint32_t> w(r.witness.begin(), r.witness.end());
        CHECK(oracle_diameter(n, w) == *r.diameter);
        // No tuple does better.
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) CHECK(oracle_diameter(n, {a, b}) >= *r.diameter);
    }
}

TEST_CASE("minimal diameter: small records and job invariance") {
    CHECK(minimal_diameter(2, 2).diameter == 1u);
    CHECK(minimal_diameter(4, 2).diameter == 2u);
    CHECK(minimal_diameter(9, 2).diameter == 3u);
    CHECK(minimal_diameter(17, 2).diameter == 4u);
    CHECK(minimal_diameter(16, 3).diameter == 3u);
    CHECK_FALSE(minimal_diameter(90, 1).diameter.has_value());
    const auto a = minimal_diameter(67, 2, {true, 1});
    const auto b = minimal_diameter(67, 2, {true, 4});
    CHECK(a.diameter == b.diameter);
    CHECK(a.witness == b.witness);
    CHECK_THROWS_AS(minimal_diameter(1, 1), DomainError);
}

TEST_CASE("lcc expectation") {
    LccOptions o;
    o.family = LccFamily::QuadraticShifts;
    o.d = 2;
    o.exhaustive = true;
    const auto r = lcc_expectation(50, o);
    CHECK(r.used == 791);
    CHECK(r.skipped == 434);
    CHECK(r.mean == doctest::Approx(1.2360394241508752).epsilon(1e-12));
    CHECK(r.stderr_ == doctest::Approx(0.011777162829389924).epsilon(1e-9));

    LccOptions one;
    one.samples = 1;
    one.seed = 4;
    const auto single = lcc_expectation(200, one);
    CHECK(single.used + single.skipped == 1);
    CHECK(single.stderr_ == 0);

    LccOptions none;
    none.family = LccFamily::QuadraticShifts;
    none.d = 1;
    none.exhaustive = true;
    CHECK_THROWS_AS(lcc_expectation(2, none), UndefinedError);

    LccOptions par = one;
    par.samples = 12;
    const auto serial = lcc_expectation(150, par);
    par.jobs = 3;
    const auto threaded = lcc_expectation(150, par);
    CHECK(serial.mean == threaded.mean);
    CHECK(serial.stderr_ == threaded.stderr_);
}

TEST_CASE("component matrix") {
    const auto m = component_matrix(40);
    for (std::uint32_t a = 0; a < 40; ++a) {
        const std::vector<MapSpec> single = {Quadratic{a}};
        CHECK(m.at(a, a) == component_count(build_orbital_graph(Modulus(40), single)));
        for (std::uint32_t b = 0; b < 40; ++b) CHECK(m.at(a, b) == m.at(b, a));
    }
    for (std::uint32_t a = 0; a < 40; a += 7)
        for (std::uint32_t b = 0; b < 40; b += 3)
            CHECK(m.at(a, b) == oracle::components_by_bfs(oracle::adjacency(40, quadratic_edges(40, {a, b}))));
    CHECK(component_matrix(22).at(2, 6) == 2);
    CHECK(component_pair(22, 2, 6) == 2);
    CHECK(component_pair(2000, 1, 2) == 1);
    CHECK(component_matrix(30, 30, 3).counts == component_matrix(30).counts);
    CHECK_THROWS_AS(component_matrix(50, 49), ResourceError);
    CHECK(matrix_sweep(component_matrix(5)).rows.size() == 15);
}

TEST_CASE("isomorphism search") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t n = 10 + static_cast<std::uint32_t>(rng.below(60));
        const Graph g = Graph::from_edges(n, oracle::random_edges(rng, n, 0.1));
        const auto perm = seeded_permutation(rng.next(), n);
        std::vector<Edge> relabeled;
        for (auto [u, v] : g.edges()) relabeled.emplace_back(perm[u], perm[v]);
        const Graph h = Graph::from_edges(n, relabeled);
        const auto r = find_isomorphism(g, h);
        REQUIRE(r.verdict == IsoVerdict::Isomorphic);
        for (auto [u, v] : g.edges()) CHECK(h.has_edge(r.mapping[u], r.mapping[v]));
    }
    const std::vector<Edge> two_triangles = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
    CHECK(find_isomorphism(cycle_graph(6), Graph::from_edges(6, two_triangles)).verdict == IsoVerdict::NotIsomorphic);
    CHECK(find_isomorphism(cycle_graph(6), path_graph(6)).verdict == IsoVerdict::NotIsomorphic);
    // Regular graphs defeat refinement; a zero budget cannot decide.
    CHECK(find_isomorphism(cycle_graph(12), cycle_graph(12), 0).verdict == IsoVerdict::Unknown);
    CHECK(find_isomorphism(cycle_graph(12), cycle_graph(12)).verdict == IsoVerdict::Isomorphic);
}

TEST_CASE("symmetry proposition: the three figure instances") {
    const std::vector<Residue> s22 = {2, 6, 16}, s32 = {2, 12, 16}, s24 = {4, 12, 16};
    const auto v22 = check_symmetry_proposition(22, s22);
    CHECK(v22.classes_disconnected);
    CHECK(v22.isomorphic == IsoVerdict::Isomorphic);
    CHECK(v22.method == "translation");
    CHECK(v22.shift == 11u);
    CHECK(component_count(build_orbital_graph(Modulus(22), quadratic_maps(s22))) == 2);

    const auto v32 = check_symmetry_proposition(32, s32);
    CHECK(v32.classes_disconnected);
    CHECK(v32.isomorphic == IsoVerdict::NotIsomorphic);
    CHECK(component_count(build_orbital_graph(Modulus(32), quadratic_maps(s32))) == 2);

    const auto v24 = check_symmetry_proposition(24, s24);
    CHECK(v24.classes_disconnected);
    CHECK(v24.isomorphic == IsoVerdict::Isomorphic);
    CHECK(component_count(build_orbital_graph(Modulus(24), quadratic_maps(s24))) == 2);

    CHECK_THROWS_AS(check_symmetry_proposition(21, s22), DomainError);
    const std::vector<Residue> odd = {3};
    CHECK_THROWS_AS(check_symmetry_proposition(22, odd), DomainError);
}

TEST_CASE("symmetry proposition: translations for n % 8 != 0") {
    Rng rng(21);
    for (std::uint32_t n = 2; n <= 120; n += 2) {
        if (n % 8 == 0) continue;
        for (int k = 0; k < 5; ++k) {
            std::vector<Residue> s;
            for (int i = 0; i < 3; ++i) s.push_back(2 * rng.below(n / 2));
            const auto v = check_symmetry_proposition(n, s);
            CAPTURE(n);
            CHECK(v.holds());
            CHECK(v.commutes);
            CHECK(v.method == "translation");
            CHECK(v.even_components == v.odd_components);
        }
    }
}

TEST_CASE("bipartite proposition") {
    const std::vector<Residue> s = {1, 3, 7};
    const auto v = check_bipartite_proposition(24, s);
    CHECK(v.holds());
    CHECK(v.part0.size() == 12);
    CHECK(v.part1.size() == 12);
    for (std::size_t i = 1; i < v.part0.size(); ++i) CHECK((v.part0[i] - v.part0[0]) % 2 == 0);

    const std::vector<Residue> one = {1};
    const auto k2 = check_bipartite_proposition(2, one);
    CHECK(k2.holds());
    CHECK(k2.part0 == std::vector<Vertex>{0});
    CHECK(k2.part1 == std::vector<Vertex>{1});

    CHECK_FALSE(two_coloring(complete_graph(3)).has_value());
    CHECK(two_coloring(cycle_graph(8)).has_value());
    const std::vector<Residue> even = {2};
    CHECK_THROWS_AS(check_bipartite_proposition(24, even), DomainError);
}

TEST_CASE("clustering decay") {
    const std::vector<std::uint32_t> small = {7};
    const auto r = run_sweep(clustering_decay_plan(2, small, 1000, 1));
    double expect = 0;
    for (std::uint32_t a = 0; a < 7; ++a)
        for (std::uint32_t b = a + 1; b < 7; ++b) {
            const std::vector<MapSpec> maps = {Quadratic{a}, Quadratic{b}};
            expect += clustering(build_orbital_graph(Modulus(7), maps)).global;
        }
    CHECK(as_int(r.at(0, "tuples")) == 21);
    CHECK(as_double(r.at(0, "mean_clustering")) == doctest::Approx(expect / 21));

    const std::vector<std::uint32_t> large = {1009, 2003};
    const auto d2 = run_sweep(clustering_decay_plan(2, large, 300, 5));
    const auto d3 = run_sweep(clustering_decay_plan(3, large, 300, 5));
    for (std::size_t i = 0; i < large.size(); ++i) {
        CHECK(as_double(d2.at(i, "n_times_clustering")) == doctest::Approx(3).epsilon(1.0 / 3));
        CHECK(as_double(d3.at(i, "n_times_clustering")) == doctest::Approx(4).epsilon(0.25));
    }
}

TEST_CASE("average degree") {
    std::vector<std::uint32_t> ns;
    for (std::uint32_t n = 10; n <= 60; ++n) ns.push_back(n);
    const auto r = run_sweep(average_degree_plan(ns));
    double best = -1;
    std::int64_t best_prime = 0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const double deg = as_double(r.at(i, "mean_degree"));
        CHECK(deg <= 4.0);
        const auto n = as_int(r.at(i, "n"));
        CHECK(as_int(r.at(i, "pairs")) == n * (n - 1) / 2);
        // Degree deficit is exactly loops plus coincidences (per vertex, doubled).
        const double predicted =
            4.0 - 2.0 * (as_double(r.at(i, "mean_self_loops")) + as_double(r.at(i, "mean_coincident"))) / n;
        CHECK(deg == doctest::Approx(predicted));
        if (deg > best) {
            best = deg;
            best_prime = as_int(r.at(i, "prime"));
        }
    }
    CHECK(best_prime == 1);
}

TEST_CASE("squaring structure") {
    const auto s7 = squaring_structure(7);
    CHECK(s7.fixed_points == 2);
    CHECK(s7.cycle_lengths == std::map<std::uint64_t, std::uint64_t>{{1, 2}, {2, 1}});
    CHECK(squaring_structure(15).fixed_points == 4);
    const auto s2 = squaring_structure(2);
    CHECK(s2.fixed_points == 2);
    CHECK(s2.cycle_lengths.size() == 1);
    for (std::uint32_t n = 2; n <= 3000; ++n) {
        const auto s = squaring_structure(n);
        CAPTURE(n);
        CHECK(s.fixed_points == s.expected_fixed_points);
        for (auto [len, ok] : s.order_match) CHECK(ok);
    }
}

TEST_CASE("alpha family") {
    const std::vector<double> one = {1.0};
    const auto maps = alpha_maps(1.0, 2);
    const std::vector<MapSpec> circulant = {Affine{1, 1}, Affine{1, 2}};
    CHECK(build_orbital_graph(Modulus(100), maps) == build_orbital_graph(Modulus(100), circulant));

    const std::vector<double> golden = {1.2};
    const auto r = run_sweep(alpha_plan(1000, golden, 4));
    CHECK(as_int(r.at(0, "edges")) == 3991);
    CHECK(as_int(r.at(0, "diameter")) == 7);
    CHECK(as_int(r.at(0, "triangles")) == 2073);
    CHECK(as_double(r.at(0, "mu")) == doctest::Approx(4.259011011011011).epsilon(1e-12));
    CHECK(as_double(r.at(0, "nu_global")) == doctest::Approx(0.21978371501272265).epsilon(1e-12));
    CHECK(as_double(r.at(0, "lambda")) == doctest::Approx(2.811021822155751).epsilon(1e-12));

    const auto cycle = run_sweep(alpha_plan(100, one, 1));
    CHECK(as_double(cycle.at(0, "mu")) == doctest::Approx(100.0 * 100 / (4 * 99)));
}

TEST_CASE("sweep runner: jobs and checkpoint resume") {
    std::vector<std::uint32_t> ns;
    for (std::uint32_t n = 2; n <= 40; ++n) ns.push_back(n);
    const auto plan = squaring_plan(ns);
    const auto serial = run_sweep(plan);
    CHECK(run_sweep(plan, {4, std::nullopt, 64}) == serial);

    const auto dir = std::filesystem::temp_directory_path() / "orbnet_sweep_test";
    std::filesystem::create_directories(dir);
    const auto partial = dir / "out.csv.partial";

    // A checkpoint holding a few finished rows is resumed, not recomputed:
    // tamper with one stored row and watch it survive.
    SweepResult head = serial;
    head.rows.resize(5);
    head.rows[2][head.column("cycle_lengths")] = std::string("tampered");
    write_sweep_csv(head, partial);
    const auto resumed = run_sweep(plan, {2, partial, 4});
    CHECK(std::get<std::string>(resumed.at(2, "cycle_lengths")) == "tampered");
    CHECK(resumed.rows.size() == serial.rows.size());
    CHECK_FALSE(std::filesystem::exists(partial));

    // A checkpoint from a different plan is ignored.
    SweepResult other = head;
    other.provenance.emplace_back("extra", "1");
    write_sweep_csv(other, partial);
    CHECK(run_sweep(plan, {1, partial, 4}) == serial);
    std::filesystem::remove_all(dir);
}
