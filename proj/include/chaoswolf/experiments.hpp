#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chaoswolf/benchmarks.hpp"
#include "chaoswolf/factorization.hpp"
#include "chaoswolf/gwo.hpp"

namespace chaoswolf::experiments {

struct FactorTarget {
    factorization::Semiprime n;
    factorization::ObjectiveTag tag;
};

/// Either a registered benchmark (by name) or a factorization target.
using ObjectiveRef = std::variant<std::string, FactorTarget>;

struct ObjectiveEntry {
    ObjectiveRef ref;
    std::optional<int> n_agents; // per-objective overrides of the plan defaults
    std::optional<int> max_iter;
};

struct ExperimentPlan {
    std::vector<ObjectiveEntry> objectives;
    std::vector<gwo::GwoVariant> variants;
    int n_agents = 30;
    int max_iter = 500;
    int n_runs = 30;
    std::uint64_t base_seed = 0;
};

struct RunStatistics {
    int n_runs = 0;
    double mean = 0.0;
    double sd = 0.0;
    int sr_count = 0;
    double sr_percent = 0.0;
    std::optional<double> mean_iterations; // over successful runs only
    std::optional<double> sd_iterations;
};

struct ResultRow {
    std::string map_label;
    std::string objective_label;
    RunStatistics stats;
};

using ResultTable = std::vector<ResultRow>;

/// Mean and sample standard deviation (n-1 denominator; 0 for a single value).
inline std::pair<double, double> aggregate(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("cannot aggregate zero values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

/// Seed for run i: the base seed xor a hash of the run index, so consecutive
/// runs get unrelated streams while the whole batch stays reproducible.
inline std::uint64_t derive_seed(std::uint64_t base, int run_index) {
    return base ^ rng::mix64(static_cast<std::uint64_t>(run_index));
}

inline std::string variant_label(const gwo::GwoVariant& v) {
    switch (v.tag) {
    case gwo::VariantTag::Standard: return "standard";
    case gwo::VariantTag::ChaoticA:
        return "chaotic-a(" + chaos::map_name(v.map_a->tag) + ")";
    case gwo::VariantTag::ChaoticC:
        return "chaotic-c(" + chaos::map_name(v.map_c->tag) + ")";
    case gwo::VariantTag::ChaoticBoth:
        return "chaotic-both(" + chaos::map_name(v.map_a->tag) + "+" +
               chaos::map_name(v.map_c->tag) + ")";
    }
    return "?";
}

inline std::string objective_label(const ObjectiveRef& ref) {
    if (const auto* name = std::get_if<std::string>(&ref)) return *name;
    const auto& t = std::get<FactorTarget>(ref);
    return factorization::objective_name(t.tag) + "@" + factorization::to_decimal(t.n.n);
}

/// All runs for one variant on one objective, reduced to summary statistics.
inline RunStatistics run_cell(const ObjectiveEntry& entry, const gwo::GwoVariant& variant,
                              const ExperimentPlan& plan) {
    if (plan.n_runs < 1) throw std::invalid_argument("plan needs at least one run");
    const int agents = entry.n_agents.value_or(plan.n_agents);
    const int iters = entry.max_iter.value_or(plan.max_iter);

    std::vector<double> values;
    std::vector<double> success_iters;
    values.reserve(static_cast<std::size_t>(plan.n_runs));
    int successes = 0;

    for (int i = 0; i < plan.n_runs; ++i) {
        gwo::GwoConfig cfg;
        cfg.n_agents = agents;
        cfg.max_iter = iters;
        cfg.variant = variant;
        cfg.rng_seed = derive_seed(plan.base_seed, i);

        if (const auto* name = std::get_if<std::string>(&entry.ref)) {
            const auto* spec = benchmarks::find(*name);
            if (!spec) throw std::invalid_argument("unknown benchmark: " + *name);
            const auto trace = gwo::run(cfg, spec->objective);
            values.push_back(trace.best.fitness);
            if (benchmarks::run_succeeded(*spec, trace.best.position, trace.best.fitness)) {
                ++successes;
                success_iters.push_back(static_cast<double>(trace.iterations_used));
            }
        } else {
            const auto& t = std::get<FactorTarget>(entry.ref);
            const auto outcome = factorization::factor(t.n, t.tag, cfg);
            values.push_back(outcome.best_value);
            if (outcome.factors) {
                ++successes;
                success_iters.push_back(static_cast<double>(outcome.iterations_used));
            }
        }
    }

    RunStatistics st;
    st.n_runs = plan.n_runs;
    std::tie(st.mean, st.sd) = aggregate(values);
    st.sr_count = successes;
    st.sr_percent = 100.0 * static_cast<double>(successes) / static_cast<double>(plan.n_runs);
    if (successes > 0) {
        auto [mi, si] = aggregate(success_iters);
        st.mean_iterations = mi;
        st.sd_iterations = si;
    }
    return st;
}

/// Runs the whole plan, variant-major: one row per (variant, objective).
inline ResultTable run_plan(const ExperimentPlan& plan) {
    if (plan.objectives.empty() || plan.variants.empty())
        throw std::invalid_argument("plan needs at least one objective and one variant");
    ResultTable table;
    for (const auto& variant : plan.variants)
        for (const auto& entry : plan.objectives)
            table.push_back({variant_label(variant), objective_label(entry.ref),
                             run_cell(entry, variant, plan)});
    return table;
}

namespace detail {

inline std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4E", v);
    return buf;
}

inline std::string fmt_fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace detail

inline std::string export_csv(const ResultTable& table) {
    std::string out = "map,objective,mean,sd,sr_percent,sr_count,mi,sd_iter\n";
    for (const auto& row : table) {
        out += row.map_label;
        out += ',';
        out += row.objective_label;
        out += ',';
        out += detail::fmt_sci(row.stats.mean);
        out += ',';
        out += detail::fmt_sci(row.stats.sd);
        out += ',';
        out += detail::fmt_fixed2(row.stats.sr_percent);
        out += ',';
        out += std::to_string(row.stats.sr_count);
        out += ',';
        if (row.stats.mean_iterations) out += detail::fmt_sci(*row.stats.mean_iterations);
        out += ',';
        if (row.stats.sd_iterations) out += detail::fmt_sci(*row.stats.sd_iterations);
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json table_to_json(const ResultTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table) {
        nlohmann::ordered_json r;
        r["map"] = row.map_label;
        r["objective"] = row.objective_label;
        r["mean"] = row.stats.mean;
        r["sd"] = row.stats.sd;
        r["sr_percent"] = row.stats.sr_percent;
        r["sr_count"] = row.stats.sr_count;
        r["mi"] = row.stats.mean_iterations ? nlohmann::ordered_json(*row.stats.mean_iterations)
                                            : nlohmann::ordered_json(nullptr);
        r["sd_iter"] = row.stats.sd_iterations ? nlohmann::ordered_json(*row.stats.sd_iterations)
                                               : nlohmann::ordered_json(nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string export_json(const ResultTable& table) {
    return table_to_json(table).dump(2) + "\n";
}

// ---- plan documents -------------------------------------------------------
//
// Plans are JSON objects:
//   {
//     "objectives": ["f3", {"n": "50759", "function": "f2", "agents": 30}],
//     "variants":   [{"variant": "standard"},
//                    {"variant": "chaotic-a", "map_a": "tent"}],
//     "agents": 30, "iters": 500, "runs": 30, "seed": "1"
//   }
// Integers that may exceed 53 bits (targets, seeds) are decimal strings.

inline chaos::ChaoticMapKind parse_map_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("variant needs a map name in '") + key + "'");
    const auto tag = chaos::map_tag_from_name(j[key].get<std::string>());
    if (!tag)
        throw std::invalid_argument("unknown map name: " + j[key].get<std::string>());
    return chaos::make_map(*tag);
}

inline gwo::GwoVariant parse_variant(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
        throw std::invalid_argument("variant entry must be an object with a 'variant' string");
    const std::string kind = j["variant"].get<std::string>();
    gwo::GwoVariant v;
    if (kind == "standard") {
        v = gwo::GwoVariant::standard();
    } else if (kind == "chaotic-a") {
        v = gwo::GwoVariant::chaotic_a(parse_map_field(j, "map_a"));
    } else if (kind == "chaotic-c") {
        v = gwo::GwoVariant::chaotic_c(parse_map_field(j, "map_c"));
    } else if (kind == "chaotic-both") {
        v = gwo::GwoVariant::chaotic_both(parse_map_field(j, "map_a"),
                                          parse_map_field(j, "map_c"));
    } else {
        throw std::invalid_argument("unknown variant kind: " + kind);
    }
    if (j.contains("final_exploit_iters")) v.final_exploit_iters = j["final_exploit_iters"].get<int>();
    if (j.contains("final_a")) v.final_a = j["final_a"].get<double>();
    v.validate();
    return v;
}

inline factorization::u128 parse_big_uint(const nlohmann::json& j, const char* what) {
    if (j.is_string()) {
        const auto v = factorization::parse_decimal(j.get<std::string>());
        if (!v) throw std::invalid_argument(std::string(what) + " is not a decimal integer");
        return *v;
    }
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    throw std::invalid_argument(std::string(what) + " must be a decimal string or unsigned integer");
}

inline ObjectiveEntry parse_objective(const nlohmann::json& j) {
    ObjectiveEntry entry{ObjectiveRef{std::string{}}, std::nullopt, std::nullopt};
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (!benchmarks::find(name)) throw std::invalid_argument("unknown benchmark: " + name);
        entry.ref = name;
        return entry;
    }
    if (!j.is_object() || !j.contains("n"))
        throw std::invalid_argument("objective must be a benchmark name or an object with 'n'");
    const auto n = factorization::Semiprime(parse_big_uint(j["n"], "target n"));
    auto tag = factorization::ObjectiveTag::F2FracSqrt;
    if (j.contains("function")) {
        const auto parsed = factorization::objective_from_name(j["function"].get<std::string>());
        if (!parsed)
            throw std::invalid_argument("unknown factorization objective: " +
                                        j["function"].get<std::string>());
        tag = *parsed;
    }
    entry.ref = FactorTarget{n, tag};
    if (j.contains("agents")) entry.n_agents = j["agents"].get<int>();
    if (j.contains("iters")) entry.max_iter = j["iters"].get<int>();
    return entry;
}

inline ExperimentPlan load_plan(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("plan must be a JSON object");
    ExperimentPlan plan;
    if (!j.contains("objectives") || !j["objectives"].is_array() ||
        !j.contains("variants") || !j["variants"].is_array())
        throw std::invalid_argument("plan needs 'objectives' and 'variants' arrays");
    for (const auto& o : j["objectives"]) plan.objectives.push_back(parse_objective(o));
    for (const auto& v : j["variants"]) plan.variants.push_back(parse_variant(v));
    if (j.contains("agents")) plan.n_agents = j["agents"].get<int>();
    if (j.contains("iters")) plan.max_iter = j["iters"].get<int>();
    if (j.contains("runs")) plan.n_runs = j["runs"].get<int>();
    if (j.contains("seed")) {
        const factorization::u128 seed = parse_big_uint(j["seed"], "seed");
        if (seed >> 64) throw std::invalid_argument("seed exceeds 64 bits");
        plan.base_seed = static_cast<std::uint64_t>(seed);
    }
    if (plan.n_agents < 4 || plan.max_iter < 0 || plan.n_runs < 1)
        throw std::invalid_argument("plan parameters out of range");
    return plan;
}

} // namespace chaoswolf::experiments
