#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chaoswolf/chaos.hpp"
#include "chaoswolf/rng.hpp"

namespace chaoswolf::gwo {

using rng::Xoshiro256ss;

struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const { return lower.size(); }

    static SearchSpace box(std::size_t dim, double lo, double hi) {
        return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
    }

    void validate() const {
        if (lower.empty() || lower.size() != upper.size())
            throw std::invalid_argument("search space bounds must be non-empty and of equal length");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] < upper[i]))
                throw std::invalid_argument("search space requires lower < upper in every dimension");
    }

    double clamp(double v, std::size_t i) const {
        return std::min(std::max(v, lower[i]), upper[i]);
    }
};

enum class Sense { Minimize, Maximize };

struct ObjectiveSpec {
    std::function<double(std::span<const double>)> evaluate;
    Sense sense = Sense::Minimize;
    SearchSpace space;
    std::optional<double> known_best_value;
    std::optional<std::vector<double>> known_best_position;
};

struct Agent {
    std::vector<double> position;
    double fitness = 0.0; // orientation of the active run: lower is better
};

/// Leader snapshots persist across iterations and are only ever replaced by
/// strictly better agents, so the incumbent best can never regress.
struct Pack {
    std::vector<Agent> agents;
    Agent alpha, beta, delta;
};

enum class VariantTag { Standard, ChaoticA, ChaoticC, ChaoticBoth };

struct GwoVariant {
    VariantTag tag = VariantTag::Standard;
    std::optional<chaos::ChaoticMapKind> map_a;
    std::optional<chaos::ChaoticMapKind> map_c;
    int final_exploit_iters = 50; // trailing window with a pinned low
    double final_a = 0.2;

    static GwoVariant standard() { return {}; }
    static GwoVariant chaotic_a(chaos::ChaoticMapKind m) {
        GwoVariant v;
        v.tag = VariantTag::ChaoticA;
        v.map_a = m;
        return v;
    }
    static GwoVariant chaotic_c(chaos::ChaoticMapKind m) {
        GwoVariant v;
        v.tag = VariantTag::ChaoticC;
        v.map_c = m;
        return v;
    }
    static GwoVariant chaotic_both(chaos::ChaoticMapKind a, chaos::ChaoticMapKind c) {
        GwoVariant v;
        v.tag = VariantTag::ChaoticBoth;
        v.map_a = a;
        v.map_c = c;
        return v;
    }

    bool uses_chaotic_a() const {
        return tag == VariantTag::ChaoticA || tag == VariantTag::ChaoticBoth;
    }
    bool uses_chaotic_c() const {
        return tag == VariantTag::ChaoticC || tag == VariantTag::ChaoticBoth;
    }

    void validate() const {
        if (uses_chaotic_a() && !map_a)
            throw std::invalid_argument("variant drives a chaotically but has no map for a");
        if (uses_chaotic_c() && !map_c)
            throw std::invalid_argument("variant drives C chaotically but has no map for C");
        if (map_a) chaos::validate_params(*map_a);
        if (map_c) chaos::validate_params(*map_c);
        if (final_exploit_iters < 0)
            throw std::invalid_argument("final exploitation window must be >= 0");
        if (!(final_a > 0.0 && final_a <= 2.0))
            throw std::invalid_argument("final a must lie in (0,2]");
    }
};

struct GwoConfig {
    int n_agents = 30;
    int max_iter = 500;
    GwoVariant variant;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (n_agents < 4)
            throw std::invalid_argument("need at least 4 agents (three leaders plus one follower)");
        if (max_iter < 0)
            throw std::invalid_argument("iteration budget must be >= 0");
        variant.validate();
    }
};

struct RunTrace {
    std::vector<double> best_value_per_iter; // entry 0 is the initial best
    std::vector<double> a_per_iter;          // one entry per executed iteration
    int iterations_used = 0;
    Agent best; // fitness in the caller's sense
};

namespace detail {

inline double to_internal(double value, Sense sense) {
    return sense == Sense::Maximize ? -value : value;
}

inline double to_user(double fitness, Sense sense) {
    return sense == Sense::Maximize ? -fitness : fitness;
}

inline double evaluate_internal(const ObjectiveSpec& obj, std::span<const double> pos) {
    return to_internal(obj.evaluate(pos), obj.sense);
}

/// Promotes an agent into the leader hierarchy when strictly better.
inline void offer_to_leaders(Pack& pack, const Agent& agent) {
    if (agent.fitness < pack.alpha.fitness) {
        pack.delta = pack.beta;
        pack.beta = pack.alpha;
        pack.alpha = agent;
    } else if (agent.fitness < pack.beta.fitness) {
        pack.delta = pack.beta;
        pack.beta = agent;
    } else if (agent.fitness < pack.delta.fitness) {
        pack.delta = agent;
    }
}

inline constexpr std::uint64_t kChaosStreamSalt = 0xC4A05F00DBADC0DEULL;

} // namespace detail

/// Control parameter for iteration t of max_iter. Standard runs decay
/// linearly from 2 towards 0; chaotic-a runs draw from the map rescaled onto
/// [1, 2], except in the trailing exploitation window where a is pinned low.
inline double a_schedule(const GwoVariant& variant, int t, int max_iter,
                         chaos::ChaoticState* a_state) {
    if (t < 0 || t >= max_iter)
        throw std::invalid_argument("iteration index out of range");
    if (!variant.uses_chaotic_a())
        return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(max_iter));
    if (a_state == nullptr)
        throw std::invalid_argument("chaotic-a schedule needs a chaotic state");
    const int window_start = std::max(0, max_iter - variant.final_exploit_iters);
    if (t >= window_start) return variant.final_a;
    return chaos::normalized_next(*a_state, {1.0, 2.0});
}

/// Per-dimension coefficient vectors for one leader. A = 2 a r1 - a with r1
/// uniform; C = 2 r2, where r2 is uniform or, for chaotic-C variants, the
/// next map iterate rescaled onto [0, 1].
inline std::pair<std::vector<double>, std::vector<double>>
coefficients(double a, Xoshiro256ss& rng, chaos::ChaoticState* c_state,
             const GwoVariant& variant, std::size_t dim) {
    const bool chaotic_c = variant.uses_chaotic_c();
    if (chaotic_c && c_state == nullptr)
        throw std::invalid_argument("chaotic-C coefficients need a chaotic state");
    std::vector<double> A(dim), C(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double r1 = rng.uniform();
        A[k] = 2.0 * a * r1 - a;
        const double r2 = chaotic_c ? chaos::normalized_next(*c_state, {0.0, 1.0})
                                    : rng.uniform();
        C[k] = 2.0 * r2;
    }
    return {std::move(A), std::move(C)};
}

inline Pack initialize_pack(const GwoConfig& cfg, const ObjectiveSpec& obj,
                            Xoshiro256ss& rng) {
    cfg.validate();
    obj.space.validate();
    if (!obj.evaluate) throw std::invalid_argument("objective has no evaluator");

    const std::size_t dim = obj.space.dim();
    Pack pack;
    pack.agents.resize(static_cast<std::size_t>(cfg.n_agents));
    for (auto& agent : pack.agents) {
        agent.position.resize(dim);
        for (std::size_t j = 0; j < dim; ++j)
            agent.position[j] = rng.uniform(obj.space.lower[j], obj.space.upper[j]);
        agent.fitness = detail::evaluate_internal(obj, agent.position);
    }

    // Initial leaders: the three best agents, ties broken by index.
    std::vector<std::size_t> order(pack.agents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pack.agents[a].fitness < pack.agents[b].fitness;
    });
    pack.alpha = pack.agents[order[0]];
    pack.beta = pack.agents[order[1]];
    pack.delta = pack.agents[order[2]];
    return pack;
}

inline Pack initialize_pack(const GwoConfig& cfg, const ObjectiveSpec& obj) {
    Xoshiro256ss rng(cfg.rng_seed);
    return initialize_pack(cfg, obj, rng);
}

/// One agent's move: average of the three leader-guided candidates, then
/// clamped back into the box.
inline std::vector<double> update_position(
    const Agent& agent, const Pack& pack,
    const std::vector<double>& A1, const std::vector<double>& A2,
    const std::vector<double>& A3, const std::vector<double>& C1,
    const std::vector<double>& C2, const std::vector<double>& C3,
    const SearchSpace& space) {
    const std::size_t dim = space.dim();
    std::vector<double> out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const double x = agent.position[j];
        const double d1 = std::fabs(C1[j] * pack.alpha.position[j] - x);
        const double d2 = std::fabs(C2[j] * pack.beta.position[j] - x);
        const double d3 = std::fabs(C3[j] * pack.delta.position[j] - x);
        const double x1 = pack.alpha.position[j] - A1[j] * d1;
        const double x2 = pack.beta.position[j] - A2[j] * d2;
        const double x3 = pack.delta.position[j] - A3[j] * d3;
        out[j] = space.clamp((x1 + x2 + x3) / 3.0, j);
    }
    return out;
}

/// One synchronous iteration: every agent moves relative to the previous
/// pack's leaders, then the leader hierarchy absorbs any improvements. `a` is
/// passed in explicitly so callers control the schedule.
inline Pack step(const Pack& prev, const GwoConfig& cfg, const ObjectiveSpec& obj,
                 double a, Xoshiro256ss& rng, chaos::ChaoticState* c_state) {
    const std::size_t dim = obj.space.dim();
    Pack out = prev;
    for (std::size_t i = 0; i < out.agents.size(); ++i) {
        auto [A1, C1] = coefficients(a, rng, c_state, cfg.variant, dim);
        auto [A2, C2] = coefficients(a, rng, c_state, cfg.variant, dim);
        auto [A3, C3] = coefficients(a, rng, c_state, cfg.variant, dim);
        out.agents[i].position =
            update_position(prev.agents[i], prev, A1, A2, A3, C1, C2, C3, obj.space);
        out.agents[i].fitness = detail::evaluate_internal(obj, out.agents[i].position);
    }
    for (const auto& agent : out.agents) detail::offer_to_leaders(out, agent);
    return out;
}

/// Full optimization run. Stops early once the incumbent best reaches
/// stop_at_value (at most / at least, depending on the sense). The trace
/// reports values in the caller's sense.
inline RunTrace run(const GwoConfig& cfg, const ObjectiveSpec& obj,
                    std::optional<double> stop_at_value = std::nullopt) {
    cfg.validate();
    Xoshiro256ss rng(cfg.rng_seed);

    // Chaotic states come from a salted side stream so the main draw
    // sequence is identical across variants.
    Xoshiro256ss chaos_rng(rng::mix64(cfg.rng_seed ^ detail::kChaosStreamSalt));
    std::optional<chaos::ChaoticState> a_state, c_state;
    if (cfg.variant.uses_chaotic_a())
        a_state = chaos::seed_state(*cfg.variant.map_a, chaos_rng);
    if (cfg.variant.uses_chaotic_c())
        c_state = chaos::seed_state(*cfg.variant.map_c, chaos_rng);

    Pack pack = initialize_pack(cfg, obj, rng);

    const auto reached = [&]() {
        if (!stop_at_value) return false;
        return pack.alpha.fitness <= detail::to_internal(*stop_at_value, obj.sense);
    };

    RunTrace trace;
    trace.best_value_per_iter.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);
    trace.best_value_per_iter.push_back(detail::to_user(pack.alpha.fitness, obj.sense));

    int used = 0;
    for (int t = 0; t < cfg.max_iter; ++t) {
        if (reached()) break;
        const double a = a_schedule(cfg.variant, t, cfg.max_iter,
                                    a_state ? &*a_state : nullptr);
        pack = step(pack, cfg, obj, a, rng, c_state ? &*c_state : nullptr);
        trace.a_per_iter.push_back(a);
        trace.best_value_per_iter.push_back(detail::to_user(pack.alpha.fitness, obj.sense));
        used = t + 1;
    }

    trace.iterations_used = used;
    trace.best.position = pack.alpha.position;
    trace.best.fitness = detail::to_user(pack.alpha.fitness, obj.sense);
    return trace;
}

inline nlohmann::ordered_json trace_to_json(const RunTrace& trace) {
    nlohmann::ordered_json j;
    j["best_value_per_iter"] = trace.best_value_per_iter;
    j["a_per_iter"] = trace.a_per_iter;
    j["iterations_used"] = trace.iterations_used;
    j["best"] = {{"position", trace.best.position}, {"value", trace.best.fitness}};
    return j;
}

} // namespace chaoswolf::gwo
