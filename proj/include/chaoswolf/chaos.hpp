#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chaoswolf/rng.hpp"

namespace chaoswolf::chaos {

enum class MapTag {
    Gauss,      // x <- frac(1/x), 0 at x == 0
    Logistic,   // x <- a x (1 - x)
    Chebyshev,  // x <- cos(k arccos x), k counts applications
    Iterative,  // x <- sin(a pi / x)
    Singer,     // x <- mu (7.86 x - 23.31 x^2 + 28.75 x^3 - 13.3 x^4)
    Tent,       // x <- x / 0.7 below 0.7, else (10/3)(1 - x)
    Sinusoidal, // x <- sin(pi x), or a x^2 sin(pi x) in the general form
};

inline constexpr MapTag kAllMaps[] = {
    MapTag::Gauss,     MapTag::Logistic, MapTag::Chebyshev, MapTag::Iterative,
    MapTag::Singer,    MapTag::Tent,     MapTag::Sinusoidal,
};

/// A map family plus its tunable parameters. Defaults are the values used
/// throughout the experiments in this project.
struct ChaoticMapKind {
    MapTag tag = MapTag::Logistic;
    double logistic_a = 4.0;            // full-chaos setting
    double iterative_a = 0.7;           // must stay inside (0, 1)
    double singer_mu = 1.07;            // must stay inside [0.9, 1.08]
    double sinusoidal_a = 2.3;          // only used by the general form
    bool sinusoidal_simplified = true;  // simplified form: x <- sin(pi x)
};

inline ChaoticMapKind make_map(MapTag tag) {
    ChaoticMapKind kind;
    kind.tag = tag;
    return kind;
}

inline std::string map_name(MapTag tag) {
    switch (tag) {
    case MapTag::Gauss: return "gauss";
    case MapTag::Logistic: return "logistic";
    case MapTag::Chebyshev: return "chebyshev";
    case MapTag::Iterative: return "iterative";
    case MapTag::Singer: return "singer";
    case MapTag::Tent: return "tent";
    case MapTag::Sinusoidal: return "sinusoidal";
    }
    return "?";
}

inline std::optional<MapTag> map_tag_from_name(std::string_view name) {
    for (MapTag tag : kAllMaps)
        if (map_name(tag) == name) return tag;
    return std::nullopt;
}

inline void validate_params(const ChaoticMapKind& kind) {
    if (kind.tag == MapTag::Iterative &&
        !(kind.iterative_a > 0.0 && kind.iterative_a < 1.0))
        throw std::invalid_argument("iterative map parameter must lie in (0,1)");
    if (kind.tag == MapTag::Singer &&
        !(kind.singer_mu >= 0.9 && kind.singer_mu <= 1.08))
        throw std::invalid_argument("singer map parameter must lie in [0.9,1.08]");
    if (kind.tag == MapTag::Logistic && kind.logistic_a != 4.0)
        throw std::invalid_argument("logistic map is only supported at a = 4");
}

/// Closed interval with lo < hi.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Range the map's iterates live in (open at the endpoints).
inline Interval native_range(const ChaoticMapKind& kind) {
    switch (kind.tag) {
    case MapTag::Chebyshev:
    case MapTag::Iterative:
        return {-1.0, 1.0};
    default:
        return {0.0, 1.0};
    }
}

/// Affine rescale of x from one interval onto another.
inline double normalize(double x, Interval from, Interval to) {
    return to.lo + (x - from.lo) * (to.hi - to.lo) / (from.hi - from.lo);
}

/// Iteration state: the map, the current value, and how many advances have
/// been applied (the Chebyshev multiplier is derived from the counter).
struct ChaoticState {
    ChaoticMapKind kind;
    double x = 0.5;
    std::uint64_t k = 0;
};

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegenerateTol = 1e-12;
inline constexpr double kPerturb = 1e-6;

/// Reflect a value back inside [lo, hi]; single reflection is enough for the
/// small overshoots these maps can produce (singer with mu near 1.08).
inline double fold_into(double x, Interval r) {
    if (x > r.hi) x = r.hi - (x - r.hi);
    if (x < r.lo) x = r.lo + (r.lo - x);
    if (x > r.hi) x = r.hi;
    if (x < r.lo) x = r.lo;
    return x;
}

/// Points an orbit must never sit on: the range endpoints (the range is open)
/// and the maps' absorbing fixed points.
inline const std::vector<double>& degenerate_points(MapTag tag) {
    static const std::vector<double> zero_one = {0.0, 1.0};
    static const std::vector<double> logistic = {0.0, 1.0, 0.75};
    static const std::vector<double> tent = {0.0, 1.0, 10.0 / 13.0};
    static const std::vector<double> signed_unit = {-1.0, 0.0, 1.0};
    switch (tag) {
    case MapTag::Logistic: return logistic;
    case MapTag::Tent: return tent;
    case MapTag::Chebyshev:
    case MapTag::Iterative: return signed_unit;
    default: return zero_one;
    }
}

inline bool is_degenerate(double x, MapTag tag) {
    for (double p : degenerate_points(tag))
        if (std::fabs(x - p) <= kDegenerateTol) return true;
    return false;
}

inline double raw_step(const ChaoticMapKind& kind, double x, std::uint64_t multiplier) {
    switch (kind.tag) {
    case MapTag::Gauss: {
        if (x == 0.0) return 0.0;
        const double inv = 1.0 / x;
        return inv - std::floor(inv);
    }
    case MapTag::Logistic:
        return kind.logistic_a * x * (1.0 - x);
    case MapTag::Chebyshev:
        return std::cos(static_cast<double>(multiplier) * std::acos(x));
    case MapTag::Iterative: {
        if (x == 0.0) x = kPerturb;
        return std::sin(kind.iterative_a * kPi / x);
    }
    case MapTag::Singer: {
        const double p = 7.86 * x - 23.31 * x * x + 28.75 * x * x * x -
                         13.3 * x * x * x * x;
        return kind.singer_mu * p;
    }
    case MapTag::Tent:
        return x < 0.7 ? x / 0.7 : (10.0 / 3.0) * (1.0 - x);
    case MapTag::Sinusoidal:
        return kind.sinusoidal_simplified
                   ? std::sin(kPi * x)
                   : kind.sinusoidal_a * x * x * std::sin(kPi * x);
    }
    return x;
}

} // namespace detail

/// Turns a uniform draw from (0, 1) into an initial state, rescaling onto the
/// native range first. The logistic map has seeds whose orbit is not chaotic
/// at a = 4 ({0, 1/4, 1/2, 3/4, 1}); those demand a redraw, hence nullopt.
/// Anything else is accepted: a seed sitting on a fixed point escapes on the
/// first advance through the degenerate-point nudge.
inline std::optional<ChaoticState> try_seed_state(const ChaoticMapKind& kind,
                                                  double draw) {
    validate_params(kind);
    if (kind.tag == MapTag::Logistic) {
        for (double banned : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (draw == banned) return std::nullopt;
    }
    const Interval r = native_range(kind);
    double x0 = draw;
    if (r.lo == -1.0) x0 = normalize(draw, {0.0, 1.0}, r);
    return ChaoticState{kind, x0, 0};
}

/// Builds a state from a value already expressed in the map's native range
/// (explicit start values supplied by a caller). Rejects values outside the
/// open range and the logistic map's excluded seeds.
inline std::optional<ChaoticState> state_from_native(const ChaoticMapKind& kind,
                                                     double x0) {
    validate_params(kind);
    const Interval r = native_range(kind);
    if (!(x0 > r.lo && x0 < r.hi)) return std::nullopt;
    if (kind.tag == MapTag::Logistic) {
        for (double banned : {0.25, 0.5, 0.75})
            if (x0 == banned) return std::nullopt;
    }
    return ChaoticState{kind, x0, 0};
}

/// Seeds a state from the generator, redrawing until the seed is usable.
template <class Rng>
ChaoticState seed_state(const ChaoticMapKind& kind, Rng& rng) {
    for (;;) {
        auto st = try_seed_state(kind, rng.uniform_open01());
        if (st) return *st;
    }
}

/// Applies the map once. The new iterate always lies strictly inside the
/// native range: values are reflected back in, and iterates that land on a
/// degenerate point are nudged by 1e-6 and reflected again.
inline double next(ChaoticState& st) {
    const Interval r = native_range(st.kind);
    double y = detail::raw_step(st.kind, st.x, st.k + 1);
    y = detail::fold_into(y, r);
    if (detail::is_degenerate(y, st.kind.tag)) {
        y += detail::kPerturb;
        y = detail::fold_into(y, r);
    }
    st.x = y;
    st.k += 1;
    return y;
}

/// Applies the map once and rescales the iterate onto `target`.
inline double normalized_next(ChaoticState& st, Interval target) {
    return normalize(next(st), native_range(st.kind), target);
}

/// First `count` iterates from a copy of the state; the argument is unchanged.
inline std::vector<double> sample_sequence(ChaoticState st, int count) {
    if (count < 0) throw std::invalid_argument("sample count must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(next(st));
    return out;
}

} // namespace chaoswolf::chaos
