#pragma once

// Data-parallel inner loops with a plain reference implementation and
// vectorized variants. The variant is picked at runtime from what the CPU
// supports; ORBNET_ISA=reference|portable64|avx2 overrides the choice.
// All variants produce bit-identical results (see tests/kernels_test.cpp).

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace orbnet::kernels {

// Adjacency in compressed sparse row form. Multi-edges and self-loops are
// allowed; they do not change distances.
struct CsrView {
    std::span<const std::uint32_t> offsets;    // vertex_count + 1 entries
    std::span<const std::uint32_t> neighbors;

    std::uint32_t vertex_count() const noexcept {
        return offsets.empty() ? 0 : static_cast<std::uint32_t>(offsets.size() - 1);
    }
};

// Per-vertex shortest path statistics of an undirected graph. Since d(x, y) =
// d(y, x), every field is both a per-source and a per-target quantity.
struct DistanceAccumulator {
    std::vector<std::uint64_t> distance_sum;     // sum of d(x, y) over reachable y != x
    std::vector<std::uint32_t> reached;          // number of reachable y != x
    std::vector<std::uint32_t> eccentricity;     // max finite d(x, y); 0 if isolated
    std::vector<std::uint32_t> at_distance_two;  // |{y : d(x, y) = 2}|
    std::vector<std::uint64_t> histogram;        // ordered pairs at each distance (index 0 unused)

    void reset(std::uint32_t n);
    friend bool operator==(const DistanceAccumulator&, const DistanceAccumulator&) = default;
};

inline constexpr std::uint32_t kNoLevelLimit = std::numeric_limits<std::uint32_t>::max();

enum class Isa { Reference, Portable64, Avx2 };

std::string_view to_string(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
Isa best_supported_isa() noexcept;
Isa active_isa() noexcept;
// Throws std::invalid_argument if the ISA is not supported on this machine.
void set_active_isa(Isa isa);

// BFS from every vertex. Returns false as soon as some pair is found at
// distance > max_level (the accumulator is then incomplete); true otherwise.
bool all_pairs_bfs(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level = kNoLevelLimit);
bool all_pairs_bfs(Isa isa, CsrView g, DistanceAccumulator& acc, std::uint32_t max_level = kNoLevelLimit);

// out[x] = (squares[x] + shift) mod modulus, where squares[x] < modulus and
// shift < modulus.
void shifted_squares(std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                     std::span<std::uint32_t> out);
void shifted_squares(Isa isa, std::span<const std::uint32_t> squares, std::uint32_t shift,
                     std::uint32_t modulus, std::span<std::uint32_t> out);

namespace detail {
bool all_pairs_bfs_reference(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level);
bool all_pairs_bfs_portable64(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level);
void shifted_squares_reference(std::span<const std::uint32_t> squares, std::uint32_t shift,
                               std::uint32_t modulus, std::span<std::uint32_t> out);
#if defined(ORBNET_HAVE_AVX2)
bool all_pairs_bfs_avx2(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level);
void shifted_squares_avx2(std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                          std::span<std::uint32_t> out);
#endif
}  // namespace detail

}  // namespace orbnet::kernels
