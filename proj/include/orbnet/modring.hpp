#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "orbnet/errors.hpp"

namespace orbnet {

using Residue = std::uint64_t;

// The ring Z_n. Arithmetic helpers reduce into [0, n-1] and use 128-bit
// intermediates, so any n < 2^63 is safe.
class Modulus {
public:
    explicit Modulus(std::uint64_t n);

    std::uint64_t value() const noexcept { return n_; }

    Residue reduce(std::int64_t x) const noexcept;
    Residue reduce_unsigned(std::uint64_t x) const noexcept { return x % n_; }
    Residue add(Residue a, Residue b) const noexcept;
    Residue sub(Residue a, Residue b) const noexcept;
    Residue mul(Residue a, Residue b) const noexcept;
    Residue pow(Residue base, std::uint64_t exponent) const noexcept;

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    std::uint64_t n_;
};

// --- map families -----------------------------------------------------------

// x -> x^2 + a
struct Quadratic {
    Residue a = 0;
    friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

// x -> a*x + b
struct Affine {
    Residue a = 1;
    Residue b = 0;
    friend bool operator==(const Affine&, const Affine&) = default;
};

// x -> g^x + c
struct Exponential {
    Residue g = 2;
    Residue c = 0;
    friend bool operator==(const Exponential&, const Exponential&) = default;
};

// x -> floor(x^alpha) + c
struct FloorPower {
    double alpha = 1.0;
    Residue c = 0;
    friend bool operator==(const FloorPower&, const FloorPower&) = default;
};

// (x, y) -> (x^2 + c - y, b*x) on Z_m^2, vertex encoding x + m*y with n = m^2.
// c and b are residues mod m.
struct Henon {
    Residue c = 0;
    Residue b = 1;
    friend bool operator==(const Henon&, const Henon&) = default;
};

// Uniform random permutation drawn by seeded_permutation(seed, n).
struct Permutation {
    std::uint64_t seed = 0;
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

using MapSpec = std::variant<Quadratic, Affine, Exponential, FloorPower, Henon, Permutation>;

// Reduces residue parameters into canonical range (mod n, or mod sqrt(n) for
// Henon). Throws DomainError for Henon on non-square n or a non-finite or
// non-positive alpha.
MapSpec normalize(const MapSpec& spec, Modulus n);

// T(x) mod n. Permutation specs rebuild their table on every call; use
// map_table for whole-ring evaluation.
Residue apply_map(const MapSpec& spec, Residue x, Modulus n);

// Images of every x in [0, n-1]. Requires n < 2^32.
std::vector<std::uint32_t> map_table(const MapSpec& spec, Modulus n);

// Grammar (whitespace-insensitive, integers may carry a sign):
//   x^2+A | A*x+B | G^x+C | floor(x^ALPHA)+C | perm(SEED) | henon(C,B)
// A trailing "+C" may be omitted and means +0.
MapSpec parse_map_spec(std::string_view text, Modulus n);

// ';'-separated list of map specs, as taken by the CLI --maps flag.
std::vector<MapSpec> parse_map_list(std::string_view text, Modulus n);

// Canonical text form; parse_map_spec(to_string(s), n) == s for normalized s.
std::string to_string(const MapSpec& spec);

// --- number theory ----------------------------------------------------------

struct FactorizationSummary {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> distinct_primes;
    unsigned omega = 0;
    std::uint64_t carmichael = 1;
};

// Trial division, so the cost is O(sqrt(n)); fine for n up to ~10^15 at desk
// scale, valid (slowly) up to 2^63 - 1.
FactorizationSummary factor_summary(std::uint64_t n);

bool is_prime(std::uint64_t n);

// Smallest t >= 1 with g^t = 1 mod n. Throws DomainError when gcd(g, n) != 1.
std::uint64_t multiplicative_order(Residue g, Modulus n);

// x^2 mod n for every x in [0, n-1]. Requires n < 2^32.
std::vector<std::uint32_t> square_table(std::uint32_t n);

// Number of idempotents x^2 = x in Z_n (equals 2^omega(n)).
std::uint64_t squaring_fixed_points(Modulus n);

// Fisher-Yates shuffle of the identity driven by Rng(seed): for i = n-1 down
// to 1 swap t[i] with t[Rng.below(i + 1)].
std::vector<std::uint32_t> seeded_permutation(std::uint64_t seed, std::uint32_t n);

}  // namespace orbnet
