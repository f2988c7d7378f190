#pragma once

// Bit-parallel multi-source BFS shared by the 64-bit and AVX2 variants.
// Each vertex carries one Block with one bit per source of the current batch;
// a level step ORs the frontier blocks of all neighbors and masks out what the
// vertex has already seen. Lane supplies the block operations; nothing here
// touches the standard library so the template can be instantiated in a TU
// compiled with wider ISA flags.

#include <cstdint>

namespace orbnet::kernels::detail {

struct BfsBuffers {
    const std::uint32_t* offsets;
    const std::uint32_t* neighbors;
    std::uint32_t n;
    std::uint64_t* distance_sum;
    std::uint32_t* reached;
    std::uint32_t* eccentricity;
    std::uint32_t* at_distance_two;
    std::uint64_t* histogram;  // n + 1 entries
};

template <class Lane>
bool multi_source_bfs(const BfsBuffers& g, std::uint32_t max_level, typename Lane::Block* seen,
                      typename Lane::Block* frontier, typename Lane::Block* next) {
    using Block = typename Lane::Block;
    const std::uint32_t n = g.n;
    for (std::uint32_t first = 0; first < n; first += Lane::kWidth) {
        const std::uint32_t count = n - first < Lane::kWidth ? n - first : Lane::kWidth;
        for (std::uint32_t v = 0; v < n; ++v) seen[v] = frontier[v] = Lane::zero();
        for (std::uint32_t j = 0; j < count; ++j) seen[first + j] = frontier[first + j] = Lane::bit(j);
        const Block full = Lane::low_bits(count);

        for (std::uint32_t level = 1;; ++level) {
            bool any = false;
            for (std::uint32_t v = 0; v < n; ++v) {
                const Block known = seen[v];
                if (Lane::equal(known, full)) {
                    next[v] = Lane::zero();
                    continue;
                }
                Block reach = Lane::zero();
                for (std::uint32_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
                    reach = Lane::bit_or(reach, frontier[g.neighbors[e]]);
                }
                const Block fresh = Lane::and_not(known, reach);
                next[v] = fresh;
                if (Lane::is_zero(fresh)) continue;
                if (level > max_level) return false;
                any = true;
                seen[v] = Lane::bit_or(known, fresh);
                const std::uint64_t c = Lane::popcount(fresh);
                g.distance_sum[v] += c * level;
                g.reached[v] += static_cast<std::uint32_t>(c);
                g.eccentricity[v] = level > g.eccentricity[v] ? level : g.eccentricity[v];
                if (level == 2) g.at_distance_two[v] += static_cast<std::uint32_t>(c);
                g.histogram[level] += c;
            }
            if (!any) break;
            Block* t = frontier;
            frontier = next;
            next = t;
        }
    }
    return true;
}

}  // namespace orbnet::kernels::detail
