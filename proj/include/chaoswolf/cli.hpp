#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaoswolf/benchmarks.hpp"
#include "chaoswolf/chaos.hpp"
#include "chaoswolf/experiments.hpp"
#include "chaoswolf/factorization.hpp"
#include "chaoswolf/gwo.hpp"

namespace chaoswolf::cli {

namespace detail {

/// Shortest round-trip text for a double (what the JSON writer emits).
inline std::string num_str(double v) { return nlohmann::json(v).dump(); }

inline std::uint64_t parse_seed_text(const std::string& text) {
    const auto v = factorization::parse_decimal(text);
    if (!v || (*v >> 64))
        throw std::invalid_argument("seed must be a decimal integer below 2^64: " + text);
    return static_cast<std::uint64_t>(*v);
}

/// --seed flag, then CHAOSWOLF_SEED, then 0.
inline std::uint64_t resolve_seed(const std::string& flag_text) {
    if (!flag_text.empty()) return parse_seed_text(flag_text);
    if (const char* env = std::getenv("CHAOSWOLF_SEED")) return parse_seed_text(env);
    return 0;
}

inline double parse_double_text(const std::string& text) {
    std::size_t idx = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &idx);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: " + text);
    }
    if (idx != text.size()) throw std::invalid_argument("not a number: " + text);
    return v;
}

inline chaos::Interval parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected lo,hi but got: " + text);
    const double lo = parse_double_text(text.substr(0, comma));
    const double hi = parse_double_text(text.substr(comma + 1));
    if (!(lo < hi)) throw std::invalid_argument("normalization range needs lo < hi");
    return {lo, hi};
}

inline gwo::GwoVariant build_variant(const std::string& kind, const std::string& map_a,
                                     const std::string& map_c) {
    const auto need_map = [](const std::string& name, const char* flag) {
        if (name.empty())
            throw std::invalid_argument(std::string("this variant requires ") + flag);
        const auto tag = chaos::map_tag_from_name(name);
        if (!tag) throw std::invalid_argument("unknown map name: " + name);
        return chaos::make_map(*tag);
    };
    if (kind == "standard") return gwo::GwoVariant::standard();
    if (kind == "chaotic-a") return gwo::GwoVariant::chaotic_a(need_map(map_a, "--map-a"));
    if (kind == "chaotic-c") return gwo::GwoVariant::chaotic_c(need_map(map_c, "--map-c"));
    if (kind == "chaotic-both")
        return gwo::GwoVariant::chaotic_both(need_map(map_a, "--map-a"),
                                             need_map(map_c, "--map-c"));
    throw std::invalid_argument("unknown variant: " + kind);
}

inline int emit(const std::string& payload, const std::string& out_path,
                std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open for writing: " << out_path << "\n";
        return 2;
    }
    f << payload;
    return 0;
}

} // namespace detail

struct MapsOpts {
    std::string kind;
    int count = 10;
    std::string x0_text;
    std::string seed_text;
    std::string normalize_text;
    std::string format = "text";
    std::string out_path;
};

inline int cmd_maps(const MapsOpts& o, std::ostream& out) {
    const auto tag = chaos::map_tag_from_name(o.kind);
    if (!tag) {
        std::cerr << "unknown map: " << o.kind << "\n";
        return 2;
    }
    if (o.count < 0) {
        std::cerr << "--count must be >= 0\n";
        return 2;
    }
    const auto kind = chaos::make_map(*tag);

    chaos::ChaoticState st{kind, 0.5, 0};
    if (!o.x0_text.empty()) {
        const double x0 = detail::parse_double_text(o.x0_text);
        const auto seeded = chaos::state_from_native(kind, x0);
        if (!seeded) {
            std::cerr << "start value is outside the map's range or excluded\n";
            return 2;
        }
        st = *seeded;
    } else {
        rng::Xoshiro256ss r(detail::resolve_seed(o.seed_text));
        st = chaos::seed_state(kind, r);
    }
    const double x0 = st.x;

    std::optional<chaos::Interval> target;
    if (!o.normalize_text.empty()) target = detail::parse_interval(o.normalize_text);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(o.count));
    for (int i = 0; i < o.count; ++i)
        values.push_back(target ? chaos::normalized_next(st, *target) : chaos::next(st));

    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["map"] = chaos::map_name(*tag);
        j["x0"] = x0;
        j["count"] = o.count;
        j["normalize"] = target ? nlohmann::ordered_json::array({target->lo, target->hi})
                                : nlohmann::ordered_json(nullptr);
        j["values"] = values;
        return detail::emit(j.dump(2) + "\n", o.out_path, out);
    }
    std::string text;
    for (double v : values) text += detail::num_str(v) + "\n";
    return detail::emit(text, o.out_path, out);
}

struct OptimizeOpts {
    std::string objective = "f3";
    std::string variant = "standard";
    std::string map_a, map_c;
    int agents = 30;
    int iters = 500;
    std::string seed_text;
    std::string format = "json";
    std::string out_path;
    std::string trace_path;
};

inline int cmd_optimize(const OptimizeOpts& o, std::ostream& out) {
    const auto* spec = benchmarks::find(o.objective);
    if (!spec) {
        std::cerr << "unknown objective: " << o.objective << "\n";
        return 2;
    }
    gwo::GwoConfig cfg;
    cfg.n_agents = o.agents;
    cfg.max_iter = o.iters;
    cfg.variant = detail::build_variant(o.variant, o.map_a, o.map_c);
    cfg.rng_seed = detail::resolve_seed(o.seed_text);

    const auto trace = gwo::run(cfg, spec->objective);

    if (!o.trace_path.empty()) {
        const int rc = detail::emit(gwo::trace_to_json(trace).dump(2) + "\n",
                                    o.trace_path, out);
        if (rc != 0) return rc;
    }

    if (o.format == "text") {
        std::string text = "best " + detail::num_str(trace.best.fitness) + " after " +
                           std::to_string(trace.iterations_used) + " iterations\n";
        return detail::emit(text, o.out_path, out);
    }
    nlohmann::ordered_json j;
    j["objective"] = spec->name;
    j["variant"] = experiments::variant_label(cfg.variant);
    j["agents"] = cfg.n_agents;
    j["iters"] = cfg.max_iter;
    j["seed"] = std::to_string(cfg.rng_seed);
    j["best_value"] = trace.best.fitness;
    j["best_position"] = trace.best.position;
    j["iterations_used"] = trace.iterations_used;
    return detail::emit(j.dump(2) + "\n", o.out_path, out);
}

struct FactorOpts {
    std::string n_text;
    std::string objective = "f2";
    std::string variant; // empty: per-objective default
    std::string map_a, map_c;
    int agents = 30;
    int iters = 500;
    std::string seed_text;
    std::string format = "json";
    std::string out_path;
};

inline int cmd_factor(const FactorOpts& o, std::ostream& out) {
    const auto tag = factorization::objective_from_name(o.objective);
    if (!tag) {
        std::cerr << "unknown factorization objective: " << o.objective << "\n";
        return 2;
    }
    const auto n = factorization::Semiprime::from_decimal(o.n_text);

    gwo::GwoConfig cfg;
    cfg.n_agents = o.agents;
    cfg.max_iter = o.iters;
    cfg.variant = o.variant.empty() ? factorization::default_variant(*tag)
                                    : detail::build_variant(o.variant, o.map_a, o.map_c);
    cfg.rng_seed = detail::resolve_seed(o.seed_text);

    const auto outcome = factorization::factor(n, *tag, cfg);

    if (o.format == "text") {
        std::string text =
            outcome.factors
                ? factorization::to_decimal(n.n) + " = " +
                      factorization::to_decimal(outcome.factors->p) + " * " +
                      factorization::to_decimal(outcome.factors->q) + " (" +
                      std::to_string(outcome.iterations_used) + " iterations)\n"
                : "no factors found for " + factorization::to_decimal(n.n) + " within " +
                      std::to_string(outcome.iterations_used) + " iterations\n";
        const int rc = detail::emit(text, o.out_path, out);
        if (rc != 0) return rc;
    } else {
        nlohmann::ordered_json j;
        j["n"] = factorization::to_decimal(n.n);
        j["objective"] = factorization::objective_name(*tag);
        j["variant"] = experiments::variant_label(cfg.variant);
        j["seed"] = std::to_string(cfg.rng_seed);
        j["success"] = outcome.factors.has_value();
        j["p"] = outcome.factors ? nlohmann::ordered_json(factorization::to_decimal(outcome.factors->p))
                                 : nlohmann::ordered_json(nullptr);
        j["q"] = outcome.factors ? nlohmann::ordered_json(factorization::to_decimal(outcome.factors->q))
                                 : nlohmann::ordered_json(nullptr);
        j["iterations"] = outcome.iterations_used;
        const int rc = detail::emit(j.dump(2) + "\n", o.out_path, out);
        if (rc != 0) return rc;
    }
    return outcome.factors ? 0 : 1;
}

struct ExperimentOpts {
    std::string plan_path;
    std::string format = "csv";
    std::string out_path;
    int runs = 0;   // 0: take from plan
    int agents = 0;
    int iters = 0;
    std::string seed_text;
};

inline int cmd_experiment(const ExperimentOpts& o, std::ostream& out) {
    std::ifstream in(o.plan_path);
    if (!in) {
        std::cerr << "cannot read plan: " << o.plan_path << "\n";
        return 2;
    }
    const nlohmann::json doc = nlohmann::json::parse(in);
    auto plan = experiments::load_plan(doc);
    // Command-line overrides beat the plan, including per-objective values.
    if (o.runs > 0) plan.n_runs = o.runs;
    if (o.agents > 0) {
        plan.n_agents = o.agents;
        for (auto& entry : plan.objectives) entry.n_agents.reset();
    }
    if (o.iters > 0) {
        plan.max_iter = o.iters;
        for (auto& entry : plan.objectives) entry.max_iter.reset();
    }
    if (!o.seed_text.empty()) plan.base_seed = detail::parse_seed_text(o.seed_text);

    const auto table = experiments::run_plan(plan);
    const std::string payload = o.format == "json" ? experiments::export_json(table)
                                                   : experiments::export_csv(table);
    return detail::emit(payload, o.out_path, out);
}

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"chaotic grey wolf optimizer toolkit"};
    app.require_subcommand(1);

    MapsOpts m;
    auto* maps = app.add_subcommand("maps", "print iterates of a chaotic map");
    maps->add_option("kind", m.kind, "map name")->required();
    maps->add_option("--count", m.count, "number of iterates");
    maps->add_option("--x0", m.x0_text, "explicit start value in the map's native range");
    maps->add_option("--seed", m.seed_text, "seed for drawing a start value");
    maps->add_option("--normalize", m.normalize_text, "rescale iterates onto lo,hi");
    maps->add_option("--format", m.format)->check(CLI::IsMember({"text", "json"}));
    maps->add_option("--out", m.out_path, "write output to a file");

    OptimizeOpts p;
    auto* optimize = app.add_subcommand("optimize", "run the optimizer on a benchmark");
    optimize->add_option("--objective", p.objective, "benchmark name (f1..f6)");
    optimize->add_option("--variant", p.variant)
        ->check(CLI::IsMember({"standard", "chaotic-a", "chaotic-c", "chaotic-both"}));
    optimize->add_option("--map-a", p.map_a, "chaotic map driving a");
    optimize->add_option("--map-c", p.map_c, "chaotic map driving C");
    optimize->add_option("--agents", p.agents);
    optimize->add_option("--iters", p.iters);
    optimize->add_option("--seed", p.seed_text);
    optimize->add_option("--format", p.format)->check(CLI::IsMember({"text", "json"}));
    optimize->add_option("--out", p.out_path, "write output to a file");
    optimize->add_option("--trace", p.trace_path, "write the full run trace as JSON");

    FactorOpts f;
    auto* factor = app.add_subcommand("factor", "factor an odd semiprime");
    factor->add_option("n", f.n_text, "target as a decimal string")->required();
    factor->add_option("--objective", f.objective, "f1, f2 or f3-log");
    factor->add_option("--variant", f.variant)
        ->check(CLI::IsMember({"standard", "chaotic-a", "chaotic-c", "chaotic-both"}));
    factor->add_option("--map-a", f.map_a);
    factor->add_option("--map-c", f.map_c);
    factor->add_option("--agents", f.agents);
    factor->add_option("--iters", f.iters);
    factor->add_option("--seed", f.seed_text);
    factor->add_option("--format", f.format)->check(CLI::IsMember({"text", "json"}));
    factor->add_option("--out", f.out_path, "write output to a file");

    ExperimentOpts e;
    auto* experiment = app.add_subcommand("experiment", "run an experiment plan");
    experiment->add_option("--plan", e.plan_path, "plan JSON file")->required();
    experiment->add_option("--format", e.format)->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--out", e.out_path, "write the table to a file");
    experiment->add_option("--runs", e.runs, "override the plan's run count");
    experiment->add_option("--agents", e.agents, "override the plan's agent count");
    experiment->add_option("--iters", e.iters, "override the plan's iteration budget");
    experiment->add_option("--seed", e.seed_text, "override the plan's base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return 2;
    }

    try {
        if (maps->parsed()) return cmd_maps(m, std::cout);
        if (optimize->parsed()) return cmd_optimize(p, std::cout);
        if (factor->parsed()) return cmd_factor(f, std::cout);
        if (experiment->parsed()) return cmd_experiment(e, std::cout);
    } catch (const factorization::BoundInfeasibleError& ex) {
        std::cerr << ex.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "bad JSON: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << ex.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace chaoswolf::cli
