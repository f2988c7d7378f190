#include <bit>
#include <memory>

#include "msbfs.hpp"
#include "orbnet/kernels.hpp"

namespace orbnet::kernels::detail {
namespace {

struct Lane64 {
    using Block = std::uint64_t;
    static constexpr std::uint32_t kWidth = 64;
    static Block zero() { return 0; }
    static Block bit(std::uint32_t j) { return Block{1} << j; }
    static Block low_bits(std::uint32_t count) { return count == 64 ? ~Block{0} : (Block{1} << count) - 1; }
    static bool equal(Block a, Block b) { return a == b; }
    static bool is_zero(Block a) { return a == 0; }
    static Block bit_or(Block a, Block b) { return a | b; }
    static Block and_not(Block mask, Block a) { return a & ~mask; }
    static std::uint64_t popcount(Block a) { return static_cast<std::uint64_t>(std::popcount(a)); }
};

}  // namespace

bool all_pairs_bfs_portable64(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level) {
    const std::uint32_t n = g.vertex_count();
    auto scratch = std::make_unique<std::uint64_t[]>(3 * static_cast<std::size_t>(n));
    acc.histogram.assign(static_cast<std::size_t>(n) + 1, 0);
    const BfsBuffers buffers{g.offsets.data(),       g.neighbors.data(),    n, acc.distance_sum.data(),
                             acc.reached.data(),     acc.eccentricity.data(), acc.at_distance_two.data(),
                             acc.histogram.data()};
    return multi_source_bfs<Lane64>(buffers, max_level, scratch.get(), scratch.get() + n, scratch.get() + 2 * n);
}

}  // namespace orbnet::kernels::detail
