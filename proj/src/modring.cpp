#include "orbnet/modring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbnet/kernels.hpp"
#include "orbnet/rng.hpp"

namespace orbnet {

namespace {

constexpr std::uint64_t kMaxTableSize = 0xffffffffULL;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t henon_side(Modulus n) {
    const std::uint64_t m = isqrt(n.value());
    if (m * m != n.value()) {
        throw DomainError("henon map needs a square vertex count, got " + std::to_string(n.value()));
    }
    return m;
}

bool is_integral_exponent(double alpha) { return alpha == std::floor(alpha) && alpha <= 64.0; }

// p/q with q <= 1000 equal to alpha up to rounding of a short decimal literal.
std::optional<std::pair<std::uint64_t, std::uint64_t>> small_fraction(double alpha) {
    for (std::uint64_t q = 1; q <= 1000; ++q) {
        const double p = std::nearbyint(alpha * static_cast<double>(q));
        if (std::fabs(p / static_cast<double>(q) - alpha) <= 1e-12 * alpha) {
            return std::pair{static_cast<std::uint64_t>(p), q};
        }
    }
    return std::nullopt;
}

void check_floor_power_range(const FloorPower& f, Modulus n) {
    if (is_integral_exponent(f.alpha)) return;
    const long double nn = static_cast<long double>(n.value());
    if (nn * std::pow(nn, static_cast<long double>(f.alpha)) >= 0x1.0p53L) {
        throw PrecisionError("floor(x^" + std::to_string(f.alpha) + ") on Z_" + std::to_string(n.value()) +
                             " exceeds the exactly representable range");
    }
}

// floor(x^alpha) for non-integral alpha, x >= 1.
std::uint64_t floor_power(std::uint64_t x, double alpha) {
    const long double y = std::exp(static_cast<long double>(alpha) * std::log(static_cast<long double>(x)));
    const long double r = std::nearbyint(y);
    if (std::fabs(y - r) > 1e-9L * std::max(1.0L, y)) return static_cast<std::uint64_t>(std::floor(y));

    // Near an integer the floating floor may land on either side; settle it
    // exactly when alpha is a short fraction p/q: floor = r iff x^p >= r^q.
    if (const auto frac = small_fraction(alpha)) {
        using boost::multiprecision::cpp_int;
        const auto [p, q] = *frac;
        const cpp_int lhs = boost::multiprecision::pow(cpp_int(x), static_cast<unsigned>(p));
        const cpp_int rhs = boost::multiprecision::pow(cpp_int(static_cast<std::uint64_t>(r)), static_cast<unsigned>(q));
        return lhs >= rhs ? static_cast<std::uint64_t>(r) : static_cast<std::uint64_t>(r) - 1;
    }
    return static_cast<std::uint64_t>(std::floor(y));
}

// --- parsing ----------------------------------------------------------------

class SpecParser {
public:
    SpecParser(std::string_view text, Modulus n) : n_(n) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char ch = text[i];
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
            chars_.push_back(ch);
            origin_.push_back(i);
        }
        origin_.push_back(text.size());
    }

    MapSpec parse() {
        MapSpec spec = parse_body();
        if (pos_ != chars_.size()) fail("unexpected trailing input");
        return normalize(spec, n_);
    }

private:
    MapSpec parse_body() {
        if (accept("perm(")) {
            const std::uint64_t seed = unsigned_integer();
            expect(")");
            return Permutation{seed};
        }
        if (accept("henon(")) {
            const std::int64_t c = integer();
            expect(",");
            const std::int64_t b = integer();
            expect(")");
            // Reduced mod sqrt(n) by normalize().
            return Henon{static_cast<Residue>(c), static_cast<Residue>(b)};
        }
        if (accept("floor(x^")) {
            const double alpha = real();
            expect(")");
            return FloorPower{alpha, constant_term()};
        }
        if (accept("x^2")) return Quadratic{constant_term()};
        if (accept("x")) return Affine{1, constant_term()};

        const std::int64_t lead = integer();
        if (accept("*x")) return Affine{n_.reduce(lead), constant_term()};
        if (accept("^x")) return Exponential{n_.reduce(lead), constant_term()};
        fail("expected '*x' or '^x'");
    }

    Residue constant_term() {
        if (pos_ == chars_.size()) return 0;
        const char sign = chars_[pos_];
        if (sign != '+' && sign != '-') fail("expected '+' or '-'");
        ++pos_;
        const std::int64_t v = integer();
        return n_.reduce(sign == '-' ? -v : v);
    }

    std::int64_t integer() {
        std::int64_t value = 0;
        const char* first = chars_.data() + pos_;
        const char* last = chars_.data() + chars_.size();
        if (first != last && *first == '+') ++first, ++pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) fail("expected integer");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    std::uint64_t unsigned_integer() {
        std::uint64_t value = 0;
        const char* first = chars_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, chars_.data() + chars_.size(), value);
        if (ec != std::errc{} || ptr == first) fail("expected unsigned integer");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    double real() {
        double value = 0;
        const char* first = chars_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, chars_.data() + chars_.size(), value);
        if (ec != std::errc{} || ptr == first) fail("expected real exponent");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    bool accept(std::string_view token) {
        if (std::string_view(chars_.data() + pos_, chars_.size() - pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("map spec: " + message, origin_[std::min(pos_, chars_.size())]);
    }

    Modulus n_;
    std::vector<char> chars_;
    std::vector<std::size_t> origin_;
    std::size_t pos_ = 0;
};

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

// --- Modulus ------------------------------------------------------------------

Modulus::Modulus(std::uint64_t n) : n_(n) {
    if (n == 0) throw DomainError("modulus must be >= 1");
}

Residue Modulus::reduce(std::int64_t x) const noexcept {
    const auto n = static_cast<__int128>(n_);
    __int128 r = static_cast<__int128>(x) % n;
    if (r < 0) r += n;
    return static_cast<Residue>(r);
}

Residue Modulus::add(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) + b) % n_);
}

Residue Modulus::sub(Residue a, Residue b) const noexcept {
    return a >= b ? (a - b) % n_ : static_cast<Residue>((static_cast<unsigned __int128>(a) + n_ - b % n_) % n_);
}

Residue Modulus::mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % n_);
}

Residue Modulus::pow(Residue base, std::uint64_t exponent) const noexcept {
    Residue result = 1 % n_;
    base %= n_;
    while (exponent > 0) {
        if (exponent & 1) result = mul(result, base);
        base = mul(base, base);
        exponent >>= 1;
    }
    return result;
}

// --- maps ---------------------------------------------------------------------

MapSpec normalize(const MapSpec& spec, Modulus n) {
    return std::visit(
        Overloaded{
            [&](const Quadratic& q) -> MapSpec { return Quadratic{q.a % n.value()}; },
            [&](const Affine& a) -> MapSpec { return Affine{a.a % n.value(), a.b % n.value()}; },
            [&](const Exponential& e) -> MapSpec { return Exponential{e.g % n.value(), e.c % n.value()}; },
            [&](const FloorPower& f) -> MapSpec {
                if (!std::isfinite(f.alpha) || f.alpha <= 0) {
                    throw DomainError("floor-power exponent must be finite and positive");
                }
                return FloorPower{f.alpha, f.c % n.value()};
            },
            [&](const Henon& h) -> MapSpec {
                const Modulus side(henon_side(n));
                // Parsed values may carry a negative sign in two's complement.
                return Henon{side.reduce(static_cast<std::int64_t>(h.c)), side.reduce(static_cast<std::int64_t>(h.b))};
            },
            [&](const Permutation& p) -> MapSpec { return p; },
        },
        spec);
}

Residue apply_map(const MapSpec& spec, Residue x, Modulus n) {
    x %= n.value();
    return std::visit(
        Overloaded{
            [&](const Quadratic& q) { return n.add(n.mul(x, x), q.a); },
            [&](const Affine& a) { return n.add(n.mul(a.a, x), a.b); },
            [&](const Exponential& e) { return n.add(n.pow(e.g, x), e.c); },
            [&](const FloorPower& f) -> Residue {
                check_floor_power_range(f, n);
                if (is_integral_exponent(f.alpha)) {
                    return n.add(x == 0 ? 0 : n.pow(x, static_cast<std::uint64_t>(f.alpha)), f.c);
                }
                return n.add(x == 0 ? 0 : floor_power(x, f.alpha) % n.value(), f.c);
            },
            [&](const Henon& h) -> Residue {
                const std::uint64_t m = henon_side(n);
                const Modulus side(m);
                const Residue px = x % m;
                const Residue py = x / m;
                const Residue nx = side.sub(side.add(side.mul(px, px), h.c % m), py);
                const Residue ny = side.mul(h.b % m, px);
                return nx + m * ny;
            },
            [&](const Permutation& p) -> Residue {
                if (n.value() > kMaxTableSize) throw DomainError("permutation modulus too large");
                return seeded_permutation(p.seed, static_cast<std::uint32_t>(n.value()))[x];
            },
        },
        spec);
}

std::vector<std::uint32_t> map_table(const MapSpec& spec, Modulus n) {
    if (n.value() > kMaxTableSize) throw DomainError("map tables need n < 2^32");
    const auto size = static_cast<std::uint32_t>(n.value());
    if (const auto* q = std::get_if<Quadratic>(&spec)) {
        const auto squares = square_table(size);
        std::vector<std::uint32_t> out(size);
        kernels::shifted_squares(squares, static_cast<std::uint32_t>(q->a % size), size, out);
        return out;
    }
    if (const auto* p = std::get_if<Permutation>(&spec)) return seeded_permutation(p->seed, size);

    std::vector<std::uint32_t> out(size);
    if (const auto* e = std::get_if<Exponential>(&spec)) {
        Residue power = 1 % n.value();
        for (std::uint32_t x = 0; x < size; ++x) {
            out[x] = static_cast<std::uint32_t>(n.add(power, e->c));
            power = n.mul(power, e->g);
        }
        return out;
    }
    if (const auto* f = std::get_if<FloorPower>(&spec)) check_floor_power_range(*f, n);
    for (std::uint32_t x = 0; x < size; ++x) out[x] = static_cast<std::uint32_t>(apply_map(spec, x, n));
    return out;
}

MapSpec parse_map_spec(std::string_view text, Modulus n) { return SpecParser(text, n).parse(); }

std::vector<MapSpec> parse_map_list(std::string_view text, Modulus n) {
    std::vector<MapSpec> specs;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        const std::string_view item = text.substr(start, end - start);
        if (item.find_first_not_of(" \t\r\n") != std::string_view::npos) {
            try {
                specs.push_back(parse_map_spec(item, n));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " in '" + std::string(item) + "'", start + e.position());
            }
        }
        start = end + 1;
    }
    if (specs.empty()) throw ParseError("empty map list", 0);
    return specs;
}

std::string to_string(const MapSpec& spec) {
    return std::visit(
        Overloaded{
            [](const Quadratic& q) { return "x^2+" + std::to_string(q.a); },
            [](const Affine& a) { return std::to_string(a.a) + "*x+" + std::to_string(a.b); },
            [](const Exponential& e) { return std::to_string(e.g) + "^x+" + std::to_string(e.c); },
            [](const FloorPower& f) { return "floor(x^" + format_real(f.alpha) + ")+" + std::to_string(f.c); },
            [](const Henon& h) { return "henon(" + std::to_string(h.c) + "," + std::to_string(h.b) + ")"; },
            [](const Permutation& p) { return "perm(" + std::to_string(p.seed) + ")"; },
        },
        spec);
}

// --- number theory ----------------------------------------------------------

FactorizationSummary factor_summary(std::uint64_t n) {
    if (n == 0) throw DomainError("factor_summary needs n >= 1");
    FactorizationSummary s;
    s.n = n;
    std::uint64_t rest = n;
    auto take = [&](std::uint64_t p) {
        unsigned k = 0;
        std::uint64_t pk = 1;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
            ++k;
        }
        s.distinct_primes.push_back(p);
        // lambda(p^k) = phi(p^k), except lambda(2^k) = 2^(k-2) for k >= 3.
        std::uint64_t lam = pk / p * (p - 1);
        if (p == 2 && k >= 3) lam /= 2;
        s.carmichael = std::lcm(s.carmichael, lam);
    };
    for (std::uint64_t p = 2; p <= rest / p; p += (p == 2 ? 1 : 2)) {
        if (rest % p == 0) take(p);
    }
    if (rest > 1) take(rest);
    s.omega = static_cast<unsigned>(s.distinct_primes.size());
    return s;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    const Modulus mod(n);
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic for all n < 3.3 * 10^24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        Residue x = mod.pow(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mod.mul(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t multiplicative_order(Residue g, Modulus n) {
    g %= n.value();
    if (std::gcd(g, n.value()) != 1) {
        throw DomainError(std::to_string(g) + " is not a unit mod " + std::to_string(n.value()));
    }
    std::uint64_t t = factor_summary(n.value()).carmichael;
    for (std::uint64_t q : factor_summary(t).distinct_primes) {
        while (t % q == 0 && n.pow(g, t / q) == 1 % n.value()) t /= q;
    }
    return t;
}

std::vector<std::uint32_t> square_table(std::uint32_t n) {
    std::vector<std::uint32_t> out(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        out[x] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * x % n);
    }
    return out;
}

std::uint64_t squaring_fixed_points(Modulus n) {
    std::uint64_t count = 0;
    for (Residue x = 0; x < n.value(); ++x) count += n.mul(x, x) == x;
    return count;
}

std::vector<std::uint32_t> seeded_permutation(std::uint64_t seed, std::uint32_t n) {
    std::vector<std::uint32_t> table(n);
    std::iota(table.begin(), table.end(), 0u);
    Rng rng(seed);
    for (std::uint32_t i = n; i-- > 1;) std::swap(table[i], table[rng.below(i + 1ULL)]);
    return table;
}

}  // namespace orbnet
