#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "orbnet/graph.hpp"

namespace orbnet {

// Each unordered pair independently with probability p.
struct ErdosRenyi {
    std::uint32_t n = 0;
    double p = 0;
};

// Ring lattice with k nearest neighbors (k even), each lattice edge rewired
// with probability p.
struct WattsStrogatz {
    std::uint32_t n = 0;
    std::uint32_t k = 2;
    double p = 0;
};

// Seed clique K_{k+1}, then every new vertex attaches k edges preferentially.
struct BarabasiAlbert {
    std::uint32_t n = 0;
    std::uint32_t k = 1;
};

// d seeded random permutations fed through the orbital construction.
struct RandomPermutations {
    std::uint32_t n = 0;
    std::uint32_t d = 1;
};

using BaselineModel = std::variant<ErdosRenyi, WattsStrogatz, BarabasiAlbert, RandomPermutations>;

struct BaselineSpec {
    BaselineModel model;
    std::uint64_t seed = 0;
};

// "er(n,p)", "ws(n,k,p)", "ba(n,k)", "perm(n,d)"; whitespace-insensitive.
BaselineModel parse_baseline_model(std::string_view text);
std::string to_string(const BaselineModel& model);

// Deterministic per (model, seed). Draw order within one Rng(seed) stream:
//   ER    pairs (u, v), u < v, lexicographic; one unit() draw each.
//   WS    for j = 1..k/2, for u = 0..n-1: one unit() draw for edge (u, u+j);
//         if rewired, below(n) draws until the new endpoint is neither u nor
//         an existing neighbor (skipped when u is already adjacent to all).
//   BA    per arriving vertex, below(2|E|) draws over the endpoint list until
//         k distinct targets are found.
//   perm  d draws of next() as the permutation seeds.
// Throws DomainError for parameters out of range.
Graph generate_baseline(const BaselineSpec& spec);

}  // namespace orbnet
