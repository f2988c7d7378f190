#pragma once

#include <cstdint>
#include <random>

namespace orbnet {

// The one random source used by every seeded construction in the project.
//
// Engine: std::mt19937_64 seeded directly with the 64-bit seed. Its output
// sequence is fixed by the C++ standard, so streams are identical on every
// platform. The standard distributions are not portable, so bounded integers
// use Lemire's multiply-and-reject method and reals use the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (seed, index); used to give each sample of a sweep
// its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace orbnet
