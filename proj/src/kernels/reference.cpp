#include <algorithm>
#include <vector>

#include "orbnet/kernels.hpp"

namespace orbnet::kernels::detail {

// One queue BFS per source. Slow and obvious; the other variants are tested
// against it.
bool all_pairs_bfs_reference(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> dist(n);
    std::vector<std::uint32_t> queue(n);
    constexpr std::uint32_t unseen = 0xffffffffu;
    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            const std::uint32_t u = queue[head++];
            for (std::uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
                const std::uint32_t v = g.neighbors[e];
                if (dist[v] != unseen) continue;
                const std::uint32_t d = dist[u] + 1;
                if (d > max_level) return false;
                dist[v] = d;
                queue[tail++] = v;
                acc.distance_sum[s] += d;
                ++acc.reached[s];
                acc.eccentricity[s] = std::max(acc.eccentricity[s], d);
                if (d == 2) ++acc.at_distance_two[s];
                if (acc.histogram.size() <= d) acc.histogram.resize(d + 1, 0);
                ++acc.histogram[d];
            }
        }
    }
    return true;
}

void shifted_squares_reference(std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                               std::span<std::uint32_t> out) {
    for (std::size_t x = 0; x < squares.size(); ++x) {
        out[x] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(squares[x]) + shift) % modulus);
    }
}

}  // namespace orbnet::kernels::detail
