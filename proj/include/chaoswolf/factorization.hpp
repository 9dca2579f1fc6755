#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chaoswolf/gwo.hpp"

namespace chaoswolf::factorization {

using u128 = unsigned __int128;

/// Raised when an objective's integer search window is empty.
struct BoundInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

/// Parses a non-empty all-digit string; nullopt on junk or overflow.
inline std::optional<u128> parse_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    constexpr u128 kMax = ~static_cast<u128>(0);
    u128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        const unsigned digit = static_cast<unsigned>(c - '0');
        if (v > (kMax - digit) / 10) return std::nullopt;
        v = v * 10 + digit;
    }
    return v;
}

inline int bit_length(u128 v) {
    int n = 0;
    while (v > 0) {
        ++n;
        v >>= 1;
    }
    return n;
}

/// Floor of the square root, exact for the full 128-bit range. Newton's
/// iteration from an initial guess >= sqrt(v) decreases monotonically.
inline u128 isqrt(u128 v) {
    if (v < 2) return v;
    u128 x = static_cast<u128>(1) << ((bit_length(v) + 1) / 2);
    for (;;) {
        const u128 y = (x + v / x) / 2;
        if (y >= x) return x;
        x = y;
    }
}

inline u128 pow10(int e) {
    u128 v = 1;
    for (int i = 0; i < e; ++i) v *= 10;
    return v;
}

inline int decimal_digits(u128 v) {
    int d = 1;
    while (v >= 10) {
        ++d;
        v /= 10;
    }
    return d;
}

/// An odd composite to factor. The factorization objectives assume both prime
/// factors have the same number of decimal digits.
struct Semiprime {
    u128 n;

    explicit Semiprime(u128 value) : n(value) {
        if (n < 9 || n % 2 == 0)
            throw std::invalid_argument("factorization target must be odd and >= 9");
    }

    static Semiprime from_decimal(std::string_view text) {
        auto v = parse_decimal(text);
        if (!v) throw std::invalid_argument("not a decimal integer: " + std::string(text));
        return Semiprime(*v);
    }
};

struct FactorPair {
    u128 p, q; // p <= q, p * q == n
};

struct IntegerBounds {
    u128 lo, hi; // inclusive
};

enum class ObjectiveTag {
    F1Modular,  // N mod x over candidate divisors
    F2FracSqrt, // fractional part of sqrt(x^2 - N) over candidate midpoints
    F3Log,      // | ln N - ln x - ln y | over candidate factor pairs
};

inline std::string objective_name(ObjectiveTag tag) {
    switch (tag) {
    case ObjectiveTag::F1Modular: return "f1";
    case ObjectiveTag::F2FracSqrt: return "f2";
    case ObjectiveTag::F3Log: return "f3-log";
    }
    return "?";
}

inline std::optional<ObjectiveTag> objective_from_name(std::string_view name) {
    if (name == "f1") return ObjectiveTag::F1Modular;
    if (name == "f2") return ObjectiveTag::F2FracSqrt;
    if (name == "f3-log" || name == "f3log") return ObjectiveTag::F3Log;
    return std::nullopt;
}

/// Assumed digit count of each prime factor: the digit count of floor(sqrt n).
inline int factor_digits(const Semiprime& n) {
    return decimal_digits(isqrt(n.n));
}

/// Divisor window for the modular objective: d-digit candidates up to sqrt(n).
inline IntegerBounds f1_bounds(const Semiprime& n) {
    const int d = factor_digits(n);
    const u128 lo = d == 1 ? 2 : pow10(d - 1);
    return {lo, isqrt(n.n)};
}

inline u128 f1_eval(u128 x, const Semiprime& n) {
    if (x == 0) throw std::invalid_argument("divisor candidate must be positive");
    return n.n % x;
}

/// Midpoint window for the square-difference objective. A hit x = (p+q)/2
/// gives x^2 - n = ((q-p)/2)^2, a perfect square. The window is capped by the
/// largest midpoint compatible with d-digit factors: p >= 10^(d-1) forces
/// x <= (p + n/p)/2 at p = 10^(d-1), and q <= 10^d - 1 forces
/// x <= (sqrt(n) + 10^d - 1)/2. Both caps are evaluated in exact integers.
inline IntegerBounds f2_bounds(const Semiprime& n) {
    const u128 s = isqrt(n.n);
    const int d = decimal_digits(s);
    const u128 L = pow10(d - 1);
    const u128 M = pow10(d) - 1;
    const u128 lo = s + 1;
    // (L*L + n) / (2L) without forming L*L + n, which can wrap for huge n:
    // split n = q*(2L) + b first, then fold the remainder into the square.
    const u128 cap1 = n.n / (2 * L) + (L * L + n.n % (2 * L)) / (2 * L);
    const u128 cap2 = (s + M) / 2;
    const u128 hi = cap1 < cap2 ? cap1 : cap2;
    if (hi >> 64)
        throw std::invalid_argument("target too large for exact midpoint arithmetic");
    if (lo > hi)
        throw BoundInfeasibleError("midpoint window is empty for " + to_decimal(n.n));
    return {lo, hi};
}

/// Surrogate for the fractional part of sqrt(x^2 - n): with r = x^2 - n and
/// s = floor(sqrt r), returns (r - s^2) / (2s + 1). Zero exactly when r is a
/// perfect square, and within 1/(2s) of the true fractional part otherwise.
inline double f2_eval(u128 x, const Semiprime& n) {
    if (x * x <= n.n)
        throw std::invalid_argument("midpoint candidate must exceed sqrt(n)");
    const u128 r = x * x - n.n;
    const u128 s = isqrt(r);
    return static_cast<double>(r - s * s) / static_cast<double>(2 * s + 1);
}

inline FactorPair recover_factors_f1(u128 x, const Semiprime& n) {
    if (x < 2) throw std::domain_error("divisor is below 2");
    if (n.n % x != 0) throw std::domain_error("candidate does not divide n");
    const u128 other = n.n / x;
    FactorPair pq{x < other ? x : other, x < other ? other : x};
    if (pq.p < 2 || pq.p * pq.q != n.n)
        throw std::domain_error("degenerate factorization");
    return pq;
}

inline FactorPair recover_factors_f2(u128 x, const Semiprime& n) {
    if (x * x <= n.n) throw std::domain_error("midpoint does not exceed sqrt(n)");
    const u128 r = x * x - n.n;
    const u128 s = isqrt(r);
    if (s * s != r) throw std::domain_error("x^2 - n is not a perfect square");
    FactorPair pq{x - s, x + s};
    if (pq.p < 2 || pq.p * pq.q != n.n)
        throw std::domain_error("degenerate factorization");
    return pq;
}

inline double f3_log_eval(u128 x, u128 y, const Semiprime& n) {
    if (x < 2 || y < 2) throw std::invalid_argument("factor candidates must be >= 2");
    return std::fabs(std::log(static_cast<double>(n.n)) -
                     std::log(static_cast<double>(x)) -
                     std::log(static_cast<double>(y)));
}

/// Candidate windows for the two-variable log objective: x spans the d-digit
/// values up to sqrt(n), y the d-digit values from sqrt(n) upward.
inline IntegerBounds f3_bounds_x(const Semiprime& n) {
    const int d = factor_digits(n);
    const u128 lo = d == 1 ? 2 : pow10(d - 1);
    const u128 hi = isqrt(n.n);
    if (lo >= hi)
        throw BoundInfeasibleError("factor window is empty for " + to_decimal(n.n));
    return {lo, hi};
}

inline IntegerBounds f3_bounds_y(const Semiprime& n) {
    const u128 lo = isqrt(n.n);
    const u128 hi = pow10(factor_digits(n)) - 1;
    if (hi >> 64)
        throw std::invalid_argument("target too large for exact pair arithmetic");
    if (lo >= hi)
        throw BoundInfeasibleError("factor window is empty for " + to_decimal(n.n));
    return {lo, hi};
}

namespace detail {

/// Nearest integer in [lo, hi] to a continuous coordinate.
inline u128 round_clamp(double v, IntegerBounds b) {
    const double r = std::round(v);
    const double lod = static_cast<double>(b.lo);
    const double hid = static_cast<double>(b.hi);
    if (!(r >= lod)) return b.lo; // also catches NaN
    if (r >= hid) return b.hi;
    u128 x = static_cast<u128>(r);
    if (x < b.lo) x = b.lo;
    if (x > b.hi) x = b.hi;
    return x;
}

} // namespace detail

struct FactorObjective {
    ObjectiveTag tag;
    Semiprime n;
};

/// Wraps an integer objective as a continuous one: coordinates are rounded to
/// the nearest in-window integer before evaluation, so the optimizer runs
/// unchanged. Exact integer arithmetic underneath means a reported zero is a
/// genuine hit, never roundoff.
inline gwo::ObjectiveSpec discrete_adapter(const FactorObjective& fo) {
    gwo::ObjectiveSpec obj;
    obj.sense = gwo::Sense::Minimize;
    obj.known_best_value = 0.0;
    const Semiprime n = fo.n;

    switch (fo.tag) {
    case ObjectiveTag::F1Modular: {
        const IntegerBounds b = f1_bounds(n);
        obj.space = gwo::SearchSpace::box(1, static_cast<double>(b.lo),
                                          static_cast<double>(b.hi));
        obj.evaluate = [n, b](std::span<const double> pos) {
            return static_cast<double>(f1_eval(detail::round_clamp(pos[0], b), n));
        };
        break;
    }
    case ObjectiveTag::F2FracSqrt: {
        const IntegerBounds b = f2_bounds(n);
        obj.space = gwo::SearchSpace::box(1, static_cast<double>(b.lo),
                                          static_cast<double>(b.hi));
        obj.evaluate = [n, b](std::span<const double> pos) {
            return f2_eval(detail::round_clamp(pos[0], b), n);
        };
        break;
    }
    case ObjectiveTag::F3Log: {
        const IntegerBounds bx = f3_bounds_x(n);
        const IntegerBounds by = f3_bounds_y(n);
        obj.space.lower = {static_cast<double>(bx.lo), static_cast<double>(by.lo)};
        obj.space.upper = {static_cast<double>(bx.hi), static_cast<double>(by.hi)};
        obj.evaluate = [n, bx, by](std::span<const double> pos) {
            const u128 x = detail::round_clamp(pos[0], bx);
            const u128 y = detail::round_clamp(pos[1], by);
            // The log objective cannot reach 0.0 in floating point even at
            // the true factors, so an exact product check supplies the zero.
            if (x * y == n.n) return 0.0;
            return f3_log_eval(x, y, n);
        };
        break;
    }
    }
    if (obj.space.dim() == 1 && !(obj.space.lower[0] < obj.space.upper[0]))
        throw BoundInfeasibleError("search window has collapsed to a point");
    return obj;
}

/// Map pairing that works best on each objective: the square-difference and
/// log objectives respond to sinusoidal chaos on both controls, the modular
/// one to sinusoidal a with iterative C.
inline gwo::GwoVariant default_variant(ObjectiveTag tag) {
    using chaos::MapTag;
    const auto sinu = chaos::make_map(MapTag::Sinusoidal);
    if (tag == ObjectiveTag::F1Modular)
        return gwo::GwoVariant::chaotic_both(sinu, chaos::make_map(MapTag::Iterative));
    return gwo::GwoVariant::chaotic_both(sinu, sinu);
}

struct FactorOutcome {
    std::optional<FactorPair> factors;
    int iterations_used = 0;
    double best_value = 0.0;
};

/// Runs the optimizer on the chosen objective and, on a zero hit, recovers
/// and verifies the factors in exact arithmetic. A zero that does not survive
/// verification counts as a failure.
inline FactorOutcome factor(const Semiprime& n, ObjectiveTag tag,
                            const gwo::GwoConfig& cfg) {
    const gwo::ObjectiveSpec obj = discrete_adapter(FactorObjective{tag, n});
    const gwo::RunTrace trace = gwo::run(cfg, obj, 0.0);

    FactorOutcome out;
    out.iterations_used = trace.iterations_used;
    out.best_value = trace.best.fitness;
    if (trace.best.fitness != 0.0) return out;

    try {
        switch (tag) {
        case ObjectiveTag::F1Modular:
            out.factors = recover_factors_f1(
                detail::round_clamp(trace.best.position[0], f1_bounds(n)), n);
            break;
        case ObjectiveTag::F2FracSqrt:
            out.factors = recover_factors_f2(
                detail::round_clamp(trace.best.position[0], f2_bounds(n)), n);
            break;
        case ObjectiveTag::F3Log: {
            const u128 x = detail::round_clamp(trace.best.position[0], f3_bounds_x(n));
            const u128 y = detail::round_clamp(trace.best.position[1], f3_bounds_y(n));
            FactorPair pq{x < y ? x : y, x < y ? y : x};
            if (pq.p < 2 || pq.p * pq.q != n.n)
                throw std::domain_error("degenerate factorization");
            out.factors = pq;
            break;
        }
        }
    } catch (const std::domain_error&) {
        out.factors.reset();
    }
    return out;
}

} // namespace chaoswolf::factorization
