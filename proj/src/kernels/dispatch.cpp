#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "orbnet/kernels.hpp"

namespace orbnet::kernels {
namespace {

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("ORBNET_ISA")) {
        const std::string_view want(env);
        for (Isa isa : {Isa::Reference, Isa::Portable64, Isa::Avx2}) {
            if (want == to_string(isa) && isa_supported(isa)) return isa;
        }
    }
    return best_supported_isa();
}

std::atomic<Isa>& active() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

void prepare(CsrView g, DistanceAccumulator& acc) {
    acc.reset(g.vertex_count());
    acc.histogram.assign(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
}

void trim(DistanceAccumulator& acc) {
    while (acc.histogram.size() > 1 && acc.histogram.back() == 0) acc.histogram.pop_back();
    if (acc.histogram.size() == 1) acc.histogram.clear();
}

}  // namespace

void DistanceAccumulator::reset(std::uint32_t n) {
    distance_sum.assign(n, 0);
    reached.assign(n, 0);
    eccentricity.assign(n, 0);
    at_distance_two.assign(n, 0);
    histogram.clear();
}

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Reference: return "reference";
        case Isa::Portable64: return "portable64";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::Reference:
        case Isa::Portable64: return true;
        case Isa::Avx2:
#if defined(ORBNET_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
            return false;
#endif
    }
    return false;
}

Isa best_supported_isa() noexcept { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Portable64; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) throw std::invalid_argument("ISA not supported: " + std::string(to_string(isa)));
    active().store(isa, std::memory_order_relaxed);
}

bool all_pairs_bfs(CsrView g, DistanceAccumulator& acc, std::uint32_t max_level) {
    return all_pairs_bfs(active_isa(), g, acc, max_level);
}

bool all_pairs_bfs(Isa isa, CsrView g, DistanceAccumulator& acc, std::uint32_t max_level) {
    prepare(g, acc);
    bool complete = false;
    switch (isa) {
        case Isa::Reference: complete = detail::all_pairs_bfs_reference(g, acc, max_level); break;
        case Isa::Portable64: complete = detail::all_pairs_bfs_portable64(g, acc, max_level); break;
        case Isa::Avx2:
#if defined(ORBNET_HAVE_AVX2)
            if (isa_supported(Isa::Avx2)) {
                complete = detail::all_pairs_bfs_avx2(g, acc, max_level);
                break;
            }
#endif
            throw std::invalid_argument("AVX2 kernels not available");
    }
    trim(acc);
    return complete;
}

void shifted_squares(std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                     std::span<std::uint32_t> out) {
    shifted_squares(active_isa(), squares, shift, modulus, out);
}

void shifted_squares(Isa isa, std::span<const std::uint32_t> squares, std::uint32_t shift, std::uint32_t modulus,
                     std::span<std::uint32_t> out) {
    switch (isa) {
        case Isa::Reference:
        case Isa::Portable64: detail::shifted_squares_reference(squares, shift, modulus, out); return;
        case Isa::Avx2:
#if defined(ORBNET_HAVE_AVX2)
            if (isa_supported(Isa::Avx2)) {
                detail::shifted_squares_avx2(squares, shift, modulus, out);
                return;
            }
#endif
            throw std::invalid_argument("AVX2 kernels not available");
    }
}

}  // namespace orbnet::kernels
