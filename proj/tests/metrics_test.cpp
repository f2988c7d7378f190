#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orbnet/metrics.hpp"
#include "orbnet/orbital.hpp"

using namespace orbnet;

namespace {

Graph quadratic_graph(std::uint64_t n, std::initializer_list<std::uint64_t> shifts) {
    std::vector<MapSpec> specs;
    for (auto a : shifts) specs.push_back(Quadratic{a});
    return build_orbital_graph(Modulus(n), specs);
}

Graph random_orbital(Rng& rng, std::uint64_t max_n, std::size_t max_d) {
    const std::uint64_t n = 2 + rng.below(max_n - 1);
    const std::size_t d = 1 + rng.below(max_d);
    std::vector<MapSpec> specs;
    for (std::size_t i = 0; i < d; ++i) {
        switch (rng.below(3)) {
            case 0: specs.push_back(Quadratic{rng.below(n)}); break;
            case 1: specs.push_back(Exponential{2 + rng.below(5), rng.below(n)}); break;
            default: specs.push_back(Permutation{rng.next()}); break;
        }
    }
    return build_orbital_graph(Modulus(n), specs);
}

}  // namespace

TEST_CASE("degree_stats") {
    const auto k4 = degree_stats(complete_graph(4));
    CHECK(k4.average == 3.0);
    CHECK(k4.variance == 0.0);
    CHECK(k4.histogram == std::map<std::uint32_t, std::uint64_t>{{3, 4}});
    CHECK(degree_stats(quadratic_graph(1001, {226})).average == doctest::Approx(2.0));
    CHECK(degree_stats(quadratic_graph(2000, {1, 31, 51})).average == doctest::Approx(6.0));
}

TEST_CASE("characteristic path length") {
    CHECK(characteristic_path_length(path_graph(3)).mean == doctest::Approx(4.0 / 3.0));
    CHECK(characteristic_path_length(complete_graph(7)).mean == 1.0);
    CHECK(characteristic_path_length(complete_graph(7)).median == 1.0);
    CHECK_THROWS_AS(characteristic_path_length(empty_graph(3)), UndefinedError);

    // Two components: a triangle and a path on 3 vertices.
    const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}};
    const Graph g = Graph::from_edges(6, e);
    CHECK(characteristic_path_length(g).mean == doctest::Approx((1.0 + 1.0 + 1.0 + 1.5 + 1.0 + 1.5) / 6.0));
    CHECK(characteristic_path_length(g, PathLengthScope::LargestComponent).mean == doctest::Approx(1.0));
}

TEST_CASE("characteristic path length agrees with Floyd-Warshall") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = 2 + static_cast<std::uint32_t>(rng.below(127));
        const auto edges = oracle::random_edges(rng, n, (1.0 + 3.0 * rng.unit()) / n);
        if (edges.empty()) continue;
        const Graph g = Graph::from_edges(n, edges);
        const auto d = oracle::floyd_warshall(oracle::adjacency(n, edges));
        CHECK(characteristic_path_length(g).mean == doctest::Approx(oracle::mean_path_length(d)).epsilon(1e-12));
    }
}

TEST_CASE("clustering") {
    const auto k3 = clustering(complete_graph(3));
    CHECK(k3.mean_local == 1.0);
    CHECK(k3.global == 1.0);
    const auto tree = clustering(path_graph(10));
    CHECK(tree.mean_local == 0.0);
    CHECK(tree.global == 0.0);
    CHECK(clustering(empty_graph(5)).global == 0.0);

    // Triangle with a pendant vertex: local = (1, 1, 1/3, 0).
    const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    const Graph g = Graph::from_edges(4, e);
    CHECK(clustering(g).mean_local == doctest::Approx((1 + 1 + 1.0 / 3) / 4));
    CHECK(clustering(g, LowDegreePolicy::Exclude).mean_local == doctest::Approx((1 + 1 + 1.0 / 3) / 3));
    CHECK(clustering(g).global == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("clustering bounds and completeness") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = random_orbital(rng, 200, 4);
        const auto c = clustering(g);
        CHECK(c.mean_local >= 0.0);
        CHECK(c.mean_local <= 1.0);
        CHECK(c.global >= 0.0);
        CHECK(c.global <= 1.0);
    }
    // Disjoint cliques have nu_global = 1; adding one edge between them breaks it.
    std::vector<Edge> e;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) {
            e.emplace_back(u, v);
            e.emplace_back(u + 4, v + 4);
        }
    CHECK(clustering(Graph::from_edges(8, e)).global == 1.0);
    e.emplace_back(3, 4);
    CHECK(clustering(Graph::from_edges(8, e)).global < 1.0);
}

TEST_CASE("length_cluster") {
    CHECK(length_cluster(5.8, 0.0024) == doctest::Approx(0.964).epsilon(0.005));
    CHECK(length_cluster(4.6, 0.00097) == doctest::Approx(0.66).epsilon(0.01));
    CHECK_THROWS_AS(length_cluster(3.0, 0.0), UndefinedError);
    CHECK_THROWS_AS(length_cluster(3.0, 1.0), UndefinedError);
}

TEST_CASE("diameter") {
    const auto d = diameter(quadratic_graph(1001, {226}));
    CHECK(d.value == 14);
    CHECK(d.connected);
    CHECK(diameter(complete_graph(9)).value == 1);
    const auto exp = build_orbital_graph(Modulus(2002), std::vector<MapSpec>{Exponential{2, 11}, Exponential{3, 5}});
    CHECK(diameter(exp).value == 7);
    const std::vector<Edge> two = {{0, 1}, {2, 3}, {3, 4}};
    const auto split = diameter(Graph::from_edges(5, two));
    CHECK(split.value == 2);
    CHECK_FALSE(split.connected);
    CHECK_THROWS_AS(diameter(empty_graph(2)), UndefinedError);
}

TEST_CASE("clique vectors") {
    CHECK(clique_vector(quadratic_graph(57, {30})).counts.at(2) == 2);
    CHECK(clique_vector(quadratic_graph(40, {4, 29, 24})).counts.at(3) == 9);
    CHECK(clique_vector(complete_graph(4)).counts == std::vector<std::uint64_t>{4, 6, 4, 1});

    const auto truncated = clique_vector(complete_graph(5), 2);
    CHECK_FALSE(truncated.complete);
    CHECK(truncated.counts == std::vector<std::uint64_t>{5, 10, 10});
    CHECK_THROWS_AS(euler_characteristic(truncated), DomainError);
    CHECK_THROWS_AS(clique_vector(complete_graph(30), 64, 1000), ResourceError);

    Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = 1 + static_cast<std::uint32_t>(rng.below(25));
        const auto edges = oracle::random_edges(rng, n, rng.unit());
        CHECK(clique_vector(Graph::from_edges(n, edges)).counts ==
              oracle::clique_counts_brute(oracle::adjacency(n, edges)));
    }
}

TEST_CASE("euler characteristic") {
    CHECK(euler_characteristic(clique_vector(path_graph(7))) == 1);
    CHECK(euler_characteristic(clique_vector(cycle_graph(6))) == 0);
    CHECK(euler_characteristic(clique_vector(complete_graph(3))) == 1);
}

TEST_CASE("curvature") {
    CHECK(curvature(empty_graph(1), 0) == Rational(1));
    for (Vertex v = 0; v < 6; ++v) CHECK(curvature(cycle_graph(6), v) == Rational(0));
    for (Vertex v = 0; v < 3; ++v) CHECK(curvature(complete_graph(3), v) == Rational(1, 3));
    CHECK(curvature_sum(complete_graph(3)) == Rational(1));
}

TEST_CASE("Gauss-Bonnet on random orbital graphs") {
    Rng rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        const Graph g = random_orbital(rng, 300, 4);
        REQUIRE(curvature_sum(g) == Rational(euler_characteristic(clique_vector(g))));
    }
}

TEST_CASE("inductive dimension") {
    CHECK(inductive_dimension(empty_graph(1)) == Rational(0));
    CHECK(inductive_dimension(empty_graph(0)) == Rational(-1));
    CHECK(inductive_dimension(cycle_graph(4)) == Rational(1));
    CHECK(inductive_dimension(cycle_graph(9)) == Rational(1));
    for (Vertex m = 1; m <= 6; ++m) CHECK(inductive_dimension(complete_graph(m + 1)) == Rational(m));
    // Triangle with a pendant vertex: spheres have dims 1, 1, 1/3 + ..., 0.
    const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    const Graph g = Graph::from_edges(4, e);
    // S(0) = {1,2} edge -> 1; S(1) -> 1; S(2) = {0,1,3} with edge 01 -> 1 + (0+0-1)/3 = 2/3; S(3) = {2} -> 0.
    CHECK(inductive_dimension(g) == Rational(1) + (Rational(1) + Rational(1) + Rational(2, 3) + Rational(0)) / Rational(4));
    const std::vector<Vertex> tri = {0, 1, 2};
    CHECK(inductive_dimension(g, tri) == Rational(2));
    CHECK_THROWS_AS(inductive_dimension(complete_graph(14), 100), ResourceError);
}

TEST_CASE("dimension bound d + 1 for d-generator graphs") {
    Rng rng(12);
    for (int trial = 0; trial < 80; ++trial) {
        const std::uint64_t n = 2 + rng.below(199);
        const std::size_t d = 1 + rng.below(3);
        std::vector<MapSpec> specs;
        for (std::size_t i = 0; i < d; ++i) specs.push_back(Quadratic{rng.below(n)});
        const Graph g = build_orbital_graph(Modulus(n), specs);
        CHECK(inductive_dimension(g) <= Rational(static_cast<std::int64_t>(d) + 1));
    }
}

TEST_CASE("single-generator graphs have no K4") {
    for (std::uint64_t n = 2; n <= 120; ++n) {
        for (std::uint64_t a = 0; a < n; ++a) {
            const Graph g = quadratic_graph(n, {a});
            const auto cv = clique_vector(g);
            REQUIRE(cv.counts.size() <= 3);
            REQUIRE(inductive_dimension(g) <= Rational(2));
            const std::int64_t c2 = cv.counts.size() > 2 ? static_cast<std::int64_t>(cv.counts[2]) : 0;
            REQUIRE(euler_characteristic(cv) == static_cast<std::int64_t>(n) - static_cast<std::int64_t>(g.edge_count()) + c2);
        }
    }
}

TEST_CASE("betti numbers") {
    CHECK(betti(path_graph(5)).b0 == 1);
    CHECK(betti(path_graph(5)).b1 == 0);
    CHECK(betti(cycle_graph(5)).b1 == 1);
    std::vector<Edge> e;
    for (Vertex v = 0; v < 4; ++v) {
        e.emplace_back(v, (v + 1) % 4);
        e.emplace_back(v + 4, (v + 1) % 4 + 4);
    }
    const Betti b = betti(Graph::from_edges(8, e));
    CHECK(b.b0 == 2);
    CHECK(b.b1 == 2);

    // Euler-Poincare at skeleton level for triangle-free graphs.
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t n = 2 * (1 + rng.below(100));
        const Graph g = quadratic_graph(n, {2 * rng.below(n / 2) + 1, 2 * rng.below(n / 2) + 1});
        REQUIRE(triangle_count(g) == 0);
        const Betti bb = betti(g);
        CHECK(euler_characteristic(clique_vector(g)) == static_cast<std::int64_t>(bb.b0) - bb.b1);
    }
}

TEST_CASE("NSW estimate") {
    CHECK_THROWS_AS(nsw_estimate(cycle_graph(20)), UndefinedError);
    CHECK_THROWS_AS(nsw_estimate(complete_graph(20)), UndefinedError);
    // d2 = 22.304 computed independently with networkx, frozen.
    const Graph g = quadratic_graph(2000, {1, 2});
    CHECK(distance_stats(g).mean_second_neighbors == doctest::Approx(22.304));
    const double est = nsw_estimate(g);
    CHECK(est == doctest::Approx(4.615596386681627));
    CHECK(est > 5.8 / 2);
    CHECK(est < 5.8 * 2);
}

TEST_CASE("degrees for two quadratic maps on a prime") {
    // Degrees never exceed 6; a degree below 2 only occurs at a fixed point
    // of one generator, whose self-loop is dropped.
    for (std::uint64_t p = 3; p <= 101; ++p) {
        if (!is_prime(p)) continue;
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = a + 1; b < p; ++b) {
                const Graph g = quadratic_graph(p, {a, b});
                for (Vertex v = 0; v < p; ++v) {
                    REQUIRE(g.degree(v) >= 1);
                    REQUIRE(g.degree(v) <= 6);
                    if (g.degree(v) < 2) {
                        const bool fixed = (std::uint64_t{v} * v + a) % p == v || (std::uint64_t{v} * v + b) % p == v;
                        REQUIRE(fixed);
                    }
                }
            }
    }
    // The literal {2..6} claim has counterexamples, e.g. x^2, x^2+1 on Z_7.
    CHECK(quadratic_graph(7, {0, 1}).degree(0) == 1);
}

TEST_CASE("compute_stats bundle") {
    const Graph g = quadratic_graph(2000, {1, 2});
    const StatsRecord r = compute_stats(g);
    CHECK(r.n == 2000);
    CHECK(r.diameter == 9u);
    CHECK(r.connected);
    REQUIRE(r.lambda);
    CHECK(*r.lambda == doctest::Approx(0.964).epsilon(0.01));
    REQUIRE(r.cliques);
    REQUIRE(r.chi);
    CHECK(*r.curvature_sum == Rational(*r.chi));
    CHECK(r.b1 == static_cast<std::int64_t>(r.edge_count) - 2000 + 1);

    const StatsRecord single = compute_stats(quadratic_graph(1001, {226}));
    CHECK_FALSE(single.lambda.has_value());
    CHECK(single.nu_global == 0.0);

    const StatsRecord empty = compute_stats(empty_graph(3));
    CHECK_FALSE(empty.mu.has_value());
    CHECK_FALSE(empty.diameter.has_value());
    CHECK(empty.b0 == 3);
}
