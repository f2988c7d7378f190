// Connectivity probabilities, minimal diameters and the component matrix.
// These sweeps touch millions of shift tuples, so they work on shifted-square
// images and union-find directly instead of building Graph objects.

#include <algorithm>
#include <atomic>
#include <limits>

#include "orbnet/experiments.hpp"
#include "orbnet/kernels.hpp"
#include "orbnet/orbital.hpp"
#include "orbnet/parallel.hpp"

namespace orbnet {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t power(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Counts connected tuples by extending prefixes. labels holds the component
// of each vertex under the prefix; an extension only has to merge labels.
class ConnectivitySearch {
public:
    ConnectivitySearch(std::uint32_t n, unsigned d, TupleSpace space)
        : n_(n), d_(d), space_(space), squares_(square_table(n)), image_(n), labels_(d + 1) {
        for (auto& l : labels_) l.resize(n);
    }

    void run() {
        for (std::uint32_t x = 0; x < n_; ++x) labels_[0][x] = x;
        descend(0, 0, n_);
    }

    std::uint64_t connected = 0;
    std::uint64_t total = 0;

private:
    std::uint64_t completions(unsigned depth, std::uint32_t first) const {
        const unsigned left = d_ - depth;
        return space_ == TupleSpace::UnorderedDistinct ? binomial(n_ - first, left) : power(n_, left);
    }

    void descend(unsigned depth, std::uint32_t first, std::uint32_t k) {
        if (k == 1) {  // prefix already connected: every extension is too
            const auto c = completions(depth, first);
            connected += c;
            total += c;
            return;
        }
        const auto& label = labels_[depth];
        for (std::uint32_t s = first; s < n_; ++s) {
            kernels::shifted_squares(squares_, s, n_, image_);
            uf_.reset(k);
            for (std::uint32_t x = 0; x < n_ && uf_.components() > 1; ++x) uf_.unite(label[x], label[image_[x]]);
            const std::uint32_t next_first = space_ == TupleSpace::UnorderedDistinct ? s + 1 : 0;
            if (depth + 1 == d_) {
                ++total;
                connected += uf_.components() == 1;
                continue;
            }
            const std::uint32_t k_next = uf_.components();
            if (k_next > 1) {
                remap_.assign(k, std::numeric_limits<std::uint32_t>::max());
                std::uint32_t fresh = 0;
                auto& next = labels_[depth + 1];
                for (std::uint32_t x = 0; x < n_; ++x) {
                    std::uint32_t& slot = remap_[uf_.find(label[x])];
                    if (slot == std::numeric_limits<std::uint32_t>::max()) slot = fresh++;
                    next[x] = slot;
                }
            }
            descend(depth + 1, next_first, k_next);
        }
    }

    std::uint32_t n_;
    unsigned d_;
    TupleSpace space_;
    std::vector<std::uint32_t> squares_;
    std::vector<std::uint32_t> image_;
    std::vector<std::vector<std::uint32_t>> labels_;
    std::vector<std::uint32_t> remap_;
    UnionFind uf_;
};

struct ConnectivityCount {
    std::uint64_t connected = 0;
    std::uint64_t total = 0;
};

ConnectivityCount connectivity_count(std::uint32_t p, unsigned d, const ConnectivityOptions& options) {
    if (p < 2) throw DomainError("connectivity needs n >= 2");
    if (!options.allow_composite && !is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (d < 1 || d > 3) throw DomainError("connectivity is defined for d = 1, 2, 3");
    if (options.space == TupleSpace::UnorderedDistinct && d > p) throw DomainError("not enough distinct shifts");
    ConnectivitySearch search(p, d, options.space);
    search.run();
    return {search.connected, search.total};
}

// Arc images of x -> x^2 + s for each shift.
struct TupleTables {
    std::vector<std::uint32_t> squares;
    std::vector<std::vector<std::uint32_t>> images;

    TupleTables(std::uint32_t n, std::span<const Residue> shifts) : squares(square_table(n)) {
        for (Residue s : shifts) {
            images.emplace_back(n);
            kernels::shifted_squares(squares, static_cast<std::uint32_t>(s), n, images.back());
        }
    }
};

bool tables_connected(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& images, UnionFind& uf) {
    uf.reset(n);
    for (const auto& img : images)
        for (std::uint32_t x = 0; x < n && uf.components() > 1; ++x) uf.unite(x, img[x]);
    return uf.components() == 1;
}

// Advances an increasing tuple over [lo, n); false when exhausted.
bool next_combination(std::vector<Residue>& t, std::size_t from, std::uint32_t n) {
    const std::size_t d = t.size();
    for (std::size_t i = d; i-- > from;) {
        if (t[i] < n - (d - i)) {
            ++t[i];
            for (std::size_t j = i + 1; j < d; ++j) t[j] = t[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<MapSpec> quadratic_maps(std::span<const Residue> shifts) {
    std::vector<MapSpec> out;
    out.reserve(shifts.size());
    for (Residue s : shifts) out.push_back(Quadratic{s});
    return out;
}

Rational connectivity_probability(std::uint32_t p, unsigned d, const ConnectivityOptions& options) {
    const auto c = connectivity_count(p, d, options);
    return Rational(static_cast<std::int64_t>(c.connected), static_cast<std::int64_t>(c.total));
}

SweepPlan connectivity_plan(std::span<const std::uint32_t> primes, unsigned d, const ConnectivityOptions& options) {
    SweepPlan plan;
    plan.experiment = "connectivity";
    plan.axes = {"p", "d"};
    plan.outcomes = {"connected", "total", "probability"};
    plan.provenance = {{"version", version_string()},
                       {"tuples", options.space == TupleSpace::UnorderedDistinct ? "unordered-distinct" : "ordered"}};
    for (auto p : primes) plan.tasks.push_back({std::int64_t{p}, std::int64_t{d}});
    plan.evaluate = [options](const Row& params) -> Row {
        const auto c = connectivity_count(static_cast<std::uint32_t>(as_int(params[0])),
                                          static_cast<unsigned>(as_int(params[1])), options);
        return {static_cast<std::int64_t>(c.connected), static_cast<std::int64_t>(c.total),
                static_cast<double>(c.connected) / static_cast<double>(c.total)};
    };
    return plan;
}

SweepPlan collatz_plan(std::uint32_t n_max) {
    if (n_max < 2) throw DomainError("collatz sweep needs n_max >= 2");
    SweepPlan plan;
    plan.experiment = "collatz";
    plan.axes = {"n"};
    plan.outcomes = {"components", "connected"};
    plan.provenance = {{"version", version_string()}, {"maps", "3*x+1;2*x"}};
    for (std::uint32_t n = 2; n <= n_max; ++n) plan.tasks.push_back({std::int64_t{n}});
    plan.evaluate = [](const Row& params) -> Row {
        const auto n = static_cast<std::uint32_t>(as_int(params[0]));
        const std::vector<MapSpec> maps = {Affine{3, 1}, Affine{2, 0}};
        const auto c = component_count(build_orbital_graph(Modulus(n), maps));
        return {std::int64_t{c}, std::int64_t{c == 1}};
    };
    return plan;
}

// --- minimal diameters ---------------------------------------------------------

std::uint32_t moore_diameter_bound(std::uint64_t n, std::uint64_t delta) {
    if (n <= 1) return 0;
    if (delta == 0 || (delta == 1 && n > 2)) return std::numeric_limits<std::uint32_t>::max();
    std::uint64_t reach = 1, layer = delta;
    std::uint32_t k = 0;
    while (reach < n) {
        reach += layer;
        layer *= delta - 1;
        ++k;
        if (delta == 1) layer = 0;
    }
    return k;
}

MinDiameterResult minimal_diameter(std::uint32_t n, unsigned d, const MinDiameterOptions& options) {
    if (n < 2) throw DomainError("minimal diameter needs n >= 2");
    if (d < 1 || d > n) throw DomainError("need 1 <= d <= n distinct shifts");
    const std::vector<std::uint32_t> squares = square_table(n);
    // Degree is at most d out-arcs plus d times the largest number of square
    // roots any residue has, which bounds the diameter from below.
    std::vector<std::uint32_t> roots(n, 0);
    for (auto s : squares) ++roots[s];
    const std::uint64_t max_roots = *std::max_element(roots.begin(), roots.end());
    const std::uint32_t floor_bound = moore_diameter_bound(n, std::uint64_t{d} * (1 + max_roots));
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    struct Local {
        std::uint32_t diameter = kNone;
        std::vector<Residue> witness;
        std::uint64_t tuples = 0;
    };
    std::vector<Local> per_first(n - d + 1);
    // Best (diameter << 32 | first shift) over finished or running rows.
    std::atomic<std::uint64_t> global{~std::uint64_t{0}};
    auto publish = [&](std::uint32_t diam, std::uint32_t first) {
        const std::uint64_t packed = (std::uint64_t{diam} << 32) | first;
        std::uint64_t cur = global.load();
        while (packed < cur && !global.compare_exchange_weak(cur, packed)) {
        }
    };

    parallel_for(per_first.size(), options.jobs, [&](std::size_t index) {
        const auto first = static_cast<std::uint32_t>(index);
        Local& local = per_first[index];
        std::vector<Residue> t(d);
        for (unsigned i = 0; i < d; ++i) t[i] = first + i;
        std::vector<std::vector<std::uint32_t>> images(d, std::vector<std::uint32_t>(n));
        std::vector<MapTable> tables(d);
        UnionFind uf;
        kernels::DistanceAccumulator acc;
        do {
            ++local.tuples;
            if (options.prune) {
                const std::uint64_t g = global.load(std::memory_order_relaxed);
                const auto g_diam = static_cast<std::uint32_t>(g >> 32);
                // An earlier row already holds an optimum no tuple can beat.
                if (g_diam == floor_bound && (g & 0xffffffffu) < first) break;
                if (local.diameter == floor_bound) break;
            }
            for (unsigned i = 0; i < d; ++i)
                kernels::shifted_squares(squares, static_cast<std::uint32_t>(t[i]), n, images[i]);
            if (options.prune && !tables_connected(n, images, uf)) continue;

            std::uint32_t limit = kernels::kNoLevelLimit;
            if (options.prune) {
                const auto g_diam = static_cast<std::uint32_t>(global.load(std::memory_order_relaxed) >> 32);
                limit = std::min(g_diam, local.diameter == kNone ? kNone : local.diameter - 1);
            }
            for (unsigned i = 0; i < d; ++i) tables[i].assign(images[i].begin(), images[i].end());
            const Graph g = build_from_tables(n, tables);
            if (!kernels::all_pairs_bfs(g.csr(), acc, limit)) continue;
            bool connected = true;
            std::uint32_t diam = 0;
            for (Vertex v = 0; v < n; ++v) {
                connected = connected && acc.reached[v] == n - 1;
                diam = std::max(diam, acc.eccentricity[v]);
            }
            if (!connected || diam >= local.diameter) continue;
            local.diameter = diam;
            local.witness = t;
            publish(diam, first);
        } while (next_combination(t, 1, n));
    });

    MinDiameterResult result;
    std::uint32_t best = kNone;
    for (const Local& local : per_first) {
        result.tuples += local.tuples;
        if (local.diameter < best) {  // rows are in lexicographic order already
            best = local.diameter;
            result.witness = local.witness;
        }
    }
    if (best != kNone) result.diameter = best;
    return result;
}

SweepPlan min_diameter_plan(std::span<const std::uint32_t> ns, unsigned d) {
    SweepPlan plan;
    plan.experiment = "min_diameter";
    plan.axes = {"d", "n"};
    plan.outcomes = {"diameter", "witness"};
    plan.provenance = {{"version", version_string()}, {"tuples", "unordered-distinct"}};
    for (auto n : ns) plan.tasks.push_back({std::int64_t{d}, std::int64_t{n}});
    plan.evaluate = [](const Row& params) -> Row {
        const auto r = minimal_diameter(static_cast<std::uint32_t>(as_int(params[1])),
                                        static_cast<unsigned>(as_int(params[0])));
        std::string witness;
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
            if (i) witness += ' ';
            witness += std::to_string(r.witness[i]);
        }
        return {r.diameter ? Cell{std::int64_t{*r.diameter}} : Cell{std::string("inf")}, witness};
    };
    return plan;
}

// --- component matrix ------------------------------------------------------------

std::uint32_t component_pair(std::uint32_t n, Residue a, Residue b) {
    if (n == 0) throw DomainError("modulus must be positive");
    const std::vector<Residue> shifts = {a % n, b % n};
    const TupleTables t(n, shifts);
    UnionFind uf(n);
    for (const auto& img : t.images)
        for (std::uint32_t x = 0; x < n; ++x) uf.unite(x, img[x]);
    return uf.components();
}

ComponentMatrix component_matrix(std::uint32_t n, std::uint32_t limit, unsigned jobs) {
    if (n == 0) throw DomainError("modulus must be positive");
    if (n > limit) throw ResourceError("component matrix for n = " + std::to_string(n) + " exceeds the limit " +
                                       std::to_string(limit));
    const std::vector<std::uint32_t> squares = square_table(n);
    std::vector<std::uint32_t> images(std::size_t{n} * n);
    for (std::uint32_t a = 0; a < n; ++a)
        kernels::shifted_squares(squares, a, n, std::span(images).subspan(std::size_t{a} * n, n));

    ComponentMatrix m;
    m.n = n;
    m.counts.assign(std::size_t{n} * n, 0);
    parallel_for(n, jobs, [&](std::size_t row) {
        const auto a = static_cast<std::uint32_t>(row);
        const std::uint32_t* ia = images.data() + std::size_t{a} * n;
        UnionFind uf;
        for (std::uint32_t b = a; b < n; ++b) {
            const std::uint32_t* ib = images.data() + std::size_t{b} * n;
            uf.reset(n);
            for (std::uint32_t x = 0; x < n; ++x) {
                uf.unite(x, ia[x]);
                uf.unite(x, ib[x]);
            }
            m.counts[std::size_t{a} * n + b] = uf.components();
        }
    });
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < a; ++b) m.counts[std::size_t{a} * n + b] = m.counts[std::size_t{b} * n + a];
    return m;
}

SweepResult matrix_sweep(const ComponentMatrix& m) {
    SweepResult r;
    r.experiment = "component_matrix";
    r.axes = {"a", "b"};
    r.outcomes = {"components"};
    r.provenance = {{"version", version_string()}, {"n", std::to_string(m.n)}};
    for (std::uint32_t a = 0; a < m.n; ++a)
        for (std::uint32_t b = a; b < m.n; ++b)
            r.rows.push_back({std::int64_t{a}, std::int64_t{b}, std::int64_t{m.at(a, b)}});
    return r;
}

}  // namespace orbnet
