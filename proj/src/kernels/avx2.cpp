// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <immintrin.h>

#include "msbfs.hpp"
#include "orbnet/kernels.hpp"

namespace orbnet::kernels::detail {
namespace {

struct LaneAvx2 {
    using Block = __m256i;
    static constexpr std::uint32_t kWidth = 256;
    static Block zero() { return _mm256_setzero_si256(); }
    static Block bit(std::uint32_t j) {
        alignas(32) long long words[4] = {0, 0, 0, 0};
        words[j / 64] = static_cast<long long>(1ULL << (j % 64));
        return _mm256_load_si256(reinterpret_cast<const __m256i*>(words));
    }
    static Block low_bits(std::uint32_t count) {
        alignas(32) long long words[4];
        for (std::uint32_t w = 0; w < 4; ++w) {
            const std::uint32_t lo = w * 64;
            std::uint64_t bits = 0;
            if (count >= lo + 64) bits = ~0ULL;
            else if (count > lo) bits = (1ULL << (count - lo)) - 1;
            words[w] = static_cast<long long>(bits);
        }
        return _mm256_load_si256(reinterpret_cast<const __m256i*>(words));
    }
    static bool equal(Block a, Block b) {
        const __m256i x = _mm256_xor_si256(a, b);
        return _mm256_testz_si256(x, x) != 0;
    }
    static bool is_zero(Block a) { return _mm256_testz_si256(a, a) != 0; }
    static Block bit_or(Block a, Block b) { return _mm256_or_si256(a, b); }
    static Block and_not(Block mask, Block a) { return _mm256_andnot_si256(mask, a); }
    static std::uint64_t popcount(Block a) {
        return static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(a, 0))) +
                                          _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(a, 1))) +
                                          _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(a, 2))) +
                                          _mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(a, 3))));
    }
};

struct AlignedBlocks {
    explicit AlignedBlocks(std::size_t count)
        : data(static_cast<__m256i*>(_mm_malloc(count * sizeof(__m256i) + 32, 32))) {}
    ~AlignedBlocks() { _mm_free(data); }
    AlignedBlocks(const AlignedBlocks&) = delete;
    AlignedBlocks& operator=(const AlignedBlocks&) = delete;
    __m256i* data;
};

}  // namespace

bool all_pairs_bfs_avx2(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level) {
    // acc is sized by the dispatcher (histogram to n + 1) so no container code
    // is instantiated under AVX2 flags here.
    const std::uint32_t n = g.vertex_count();
    AlignedBlocks scratch(3 * static_cast<std::size_t>(n));
    const BfsBuffers buffers{g.offsets.data(),       g.neighbors.data(),    n, acc.distance_sum.data(),
                             acc.reached.data(),     acc.eccentricity.data(), acc.at_distance_two.data(),
                             acc.histogram.data()};
    return multi_source_bfs<LaneAvx2>(buffers, max_level, scratch.data, scratch.data + n, scratch.data + 2 * n);
}

void shifted_squares_avx2(std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                          std::span<std::uint32_t> out) {
    const std::size_t size = squares.size();
    std::size_t x = 0;
    // Sums stay below 2^32 when modulus <= 2^31; min_epu32(v, v - m) then
    // selects the reduced value because v - m wraps when v < m.
    if (modulus <= 0x80000000u) {
        const __m256i vshift = _mm256_set1_epi32(static_cast<int>(shift));
        const __m256i vmod = _mm256_set1_epi32(static_cast<int>(modulus));
        for (; x + 8 <= size; x += 8) {
            const __m256i sq = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(squares.data() + x));
            const __m256i sum = _mm256_add_epi32(sq, vshift);
            const __m256i reduced = _mm256_min_epu32(sum, _mm256_sub_epi32(sum, vmod));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + x), reduced);
        }
    }
    for (; x < size; ++x) {
        out[x] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(squares[x]) + shift) % modulus);
    }
}

}  // namespace orbnet::kernels::detail
