// Acceptance gate: end-to-end checks of the library's headline claims.
// Each criterion prints one PASS/FAIL line; the exit code is the number of
// failed criteria. Unlike the unit tests, these run full-size optimization
// batches, so expect a couple of minutes of wall time.

#include <chaoswolf/benchmarks.hpp>
#include <chaoswolf/chaos.hpp>
#include <chaoswolf/experiments.hpp>
#include <chaoswolf/factorization.hpp>
#include <chaoswolf/gwo.hpp>
#include <chaoswolf/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"

namespace cw = chaoswolf;
using cw::factorization::u128;

namespace {

struct Result {
    bool ok;
    std::string detail;
};

Result pass() { return {true, ""}; }
Result fail(const std::string& why) { return {false, why}; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// C1: the exact integer layer. Window bounds must bracket the true factors
// and the zero set of the square-difference objective must match trial
// division exactly, value by value, over the whole window.

Result c1_integer_layer() {
    namespace fz = cw::factorization;

    for (std::uint64_t target : {50759ULL, 370627ULL, 10909343ULL, 29835457ULL}) {
        const fz::Semiprime n(target);
        const std::uint64_t p0 = oracles::smallest_factor(target);
        const std::uint64_t q0 = target / p0;
        const u128 x_expected = (static_cast<u128>(p0) + q0) / 2;

        const auto b = fz::f2_bounds(n);
        if (x_expected < b.lo || x_expected > b.hi)
            return fail("window misses midpoint for " + std::to_string(target));

        int zeros = 0;
        for (u128 x = b.lo; x <= b.hi; ++x) {
            const bool hit = fz::f2_eval(x, n) == 0.0;
            const u128 r = x * x - n.n;
            if (hit != oracles::is_perfect_square(r))
                return fail("zero set disagrees with perfect-square oracle at x=" +
                            fz::to_decimal(x));
            if (hit) {
                ++zeros;
                const auto pq = fz::recover_factors_f2(x, n);
                if (pq.p * pq.q != n.n || pq.p != p0)
                    return fail("recovered factors wrong for " + std::to_string(target));
            }
        }
        if (zeros != 1)
            return fail("expected exactly one zero for " + std::to_string(target));

        const auto b1 = fz::f1_bounds(n);
        if (p0 < b1.lo || static_cast<u128>(p0) > b1.hi)
            return fail("modular window misses smallest factor of " +
                        std::to_string(target));
    }

    // Random semiprimes with equal-length factors: both windows must contain
    // their designated solution.
    const auto primes = oracles::odd_primes_up_to(9999);
    std::vector<std::vector<std::uint64_t>> by_digits(5);
    for (auto p : primes)
        if (p >= 11) by_digits[std::to_string(p).size()].push_back(p);

    cw::rng::Xoshiro256ss rng(123);
    for (int i = 0; i < 1000; ++i) {
        const auto& pool = by_digits[2 + static_cast<int>(i % 3)];
        const std::uint64_t p = pool[rng.next_u64() % pool.size()];
        std::uint64_t q = pool[rng.next_u64() % pool.size()];
        if (p == q) {
            --i;
            continue;
        }
        const fz::Semiprime n(static_cast<u128>(p) * q);
        const u128 lo_f = p < q ? p : q;
        const u128 mid = (static_cast<u128>(p) + q) / 2;
        const auto b1 = fz::f1_bounds(n);
        const auto b2 = fz::f2_bounds(n);
        if (lo_f < b1.lo || lo_f > b1.hi) return fail("modular window misses a factor");
        if (mid < b2.lo || mid > b2.hi) return fail("square window misses the midpoint");
        if (fz::f2_eval(mid, n) != 0.0) return fail("midpoint not a zero");
        if (fz::f1_eval(lo_f, n) != 0) return fail("factor not a modular zero");
    }

    // Integer square root against its defining inequality on random 128-bit
    // values, plus exactness on perfect squares.
    cw::rng::Xoshiro256ss r2(77);
    for (int i = 0; i < 100000; ++i) {
        const u128 v = (static_cast<u128>(r2.next_u64()) << 64) | r2.next_u64();
        const u128 s = fz::isqrt(v);
        if (s * s > v || v - s * s > 2 * s) return fail("isqrt inequality violated");
    }
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t k = r2.next_u64() | 1ULL;
        const u128 sq = static_cast<u128>(k) * k;
        if (fz::isqrt(sq) != k || fz::isqrt(sq - 1) != static_cast<u128>(k) - 1)
            return fail("isqrt wrong near a perfect square");
    }
    return pass();
}

// ---------------------------------------------------------------------------
// C2: every registered benchmark with a listed optimum evaluates to its
// reference best value there.

Result c2_benchmark_optima() {
    int with_optima = 0;
    for (const auto& spec : cw::benchmarks::all()) {
        if (!spec.objective.known_best_position) continue;
        if (!spec.objective.known_best_value)
            return fail(spec.name + " lists an optimum but no best value");
        ++with_optima;
        const auto& opt = *spec.objective.known_best_position;
        const double v = spec.objective.evaluate(opt);
        if (std::fabs(v - *spec.objective.known_best_value) > 1e-9)
            return fail(spec.name + " evaluates to " + fmt(v) + " at its optimum");
    }
    if (with_optima != 5) return fail("expected 5 benchmarks with listed optima");
    return pass();
}

// ---------------------------------------------------------------------------
// C3/C4: the baseline optimizer at its default budget must be reliable on
// the smooth and the low-dimensional benchmarks.

cw::experiments::RunStatistics
bench_cell(const std::string& name, const cw::gwo::GwoVariant& variant, int agents,
           int iters, int runs) {
    cw::experiments::ExperimentPlan plan;
    plan.n_agents = agents;
    plan.max_iter = iters;
    plan.n_runs = runs;
    plan.base_seed = 42;
    return cw::experiments::run_cell({name, {}, {}}, variant, plan);
}

Result c3_sphere_baseline() {
    const auto st = bench_cell("f3", cw::gwo::GwoVariant::standard(), 30, 500, 30);
    if (st.mean > 1e-15) return fail("mean " + fmt(st.mean) + " above 1e-15");
    if (st.sr_count != 30) return fail(std::to_string(st.sr_count) + "/30 successes");
    return pass();
}

Result c4_ackley_goldstein_baseline() {
    for (const char* name : {"f2", "f4"}) {
        const auto st = bench_cell(name, cw::gwo::GwoVariant::standard(), 30, 500, 30);
        if (st.sr_count != 30)
            return fail(std::string(name) + ": " + std::to_string(st.sr_count) +
                        "/30 successes");
    }
    return pass();
}

// ---------------------------------------------------------------------------
// C5: replacing the linear control decay with a sinusoidal-map schedule must
// sharpen sphere accuracy by at least five orders of magnitude (medians).

Result c5_chaotic_a_accuracy() {
    const auto* spec = cw::benchmarks::find("f3");
    const auto run_batch = [&](const cw::gwo::GwoVariant& variant) {
        std::vector<double> values;
        for (int i = 0; i < 30; ++i) {
            cw::gwo::GwoConfig cfg;
            cfg.n_agents = 30;
            cfg.max_iter = 500;
            cfg.variant = variant;
            cfg.rng_seed = cw::experiments::derive_seed(42, i);
            values.push_back(cw::gwo::run(cfg, spec->objective).best.fitness);
        }
        return median(values);
    };
    const double med_std = run_batch(cw::gwo::GwoVariant::standard());
    const double med_chaotic = run_batch(cw::gwo::GwoVariant::chaotic_a(
        cw::chaos::make_map(cw::chaos::MapTag::Sinusoidal)));
    if (med_std <= 0.0) return fail("baseline median not positive");
    if (med_chaotic > med_std * 1e-5)
        return fail("medians " + fmt(med_chaotic) + " vs " + fmt(med_std));
    return pass();
}

// ---------------------------------------------------------------------------
// C6: the chaotic 'a' schedule must keep exploration alive late in the run
// (values above 1 where the linear decay has already dropped below), then
// pin the trailing window low.

Result c6_late_exploration() {
    const auto* spec = cw::benchmarks::find("f3");
    const auto trace_for = [&](const cw::gwo::GwoVariant& variant) {
        cw::gwo::GwoConfig cfg;
        cfg.n_agents = 10;
        cfg.max_iter = 500;
        cfg.variant = variant;
        cfg.rng_seed = 7;
        return cw::gwo::run(cfg, spec->objective);
    };

    const auto chaotic = trace_for(
        cw::gwo::GwoVariant::chaotic_a(cw::chaos::make_map(cw::chaos::MapTag::Tent)));
    const auto standard = trace_for(cw::gwo::GwoVariant::standard());
    if (chaotic.a_per_iter.size() != 500 || standard.a_per_iter.size() != 500)
        return fail("expected full 500-iteration traces");

    int high_chaotic = 0, high_standard = 0;
    for (int t = 250; t < 450; ++t) {
        if (chaotic.a_per_iter[static_cast<std::size_t>(t)] > 1.0) ++high_chaotic;
        if (standard.a_per_iter[static_cast<std::size_t>(t)] > 1.0) ++high_standard;
    }
    if (high_standard != 0) return fail("linear decay exceeded 1 after midpoint");
    if (high_chaotic <= 40)
        return fail("only " + std::to_string(high_chaotic) + "/200 late values above 1");
    for (int t = 450; t < 500; ++t)
        if (chaotic.a_per_iter[static_cast<std::size_t>(t)] != 0.2)
            return fail("trailing window not pinned to 0.2");
    return pass();
}

// ---------------------------------------------------------------------------
// C7/C8: factorization success rates at the preset budgets.

cw::experiments::RunStatistics factor_cell(std::uint64_t n,
                                           cw::factorization::ObjectiveTag tag,
                                           int agents, int iters) {
    cw::experiments::ExperimentPlan plan;
    plan.n_runs = 30;
    plan.base_seed = 42;
    cw::experiments::ObjectiveEntry entry{
        cw::experiments::FactorTarget{cw::factorization::Semiprime(n), tag}, agents,
        iters};
    return cw::experiments::run_cell(entry, cw::factorization::default_variant(tag),
                                     plan);
}

Result c7_factor_small() {
    const auto st =
        factor_cell(50759, cw::factorization::ObjectiveTag::F2FracSqrt, 30, 100);
    if (st.sr_count < 27)
        return fail(std::to_string(st.sr_count) + "/30 successes");
    if (!st.mean_iterations || *st.mean_iterations > 60.0)
        return fail("mean iterations " +
                    (st.mean_iterations ? fmt(*st.mean_iterations) : "missing"));
    return pass();
}

Result c8_factor_medium() {
    const auto st =
        factor_cell(10909343, cw::factorization::ObjectiveTag::F2FracSqrt, 80, 500);
    if (st.sr_count < 24)
        return fail("10909343: " + std::to_string(st.sr_count) + "/30 successes");

    int hits = 0;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        cw::gwo::GwoConfig cfg;
        cfg.n_agents = 100;
        cfg.max_iter = 1000;
        cfg.variant =
            cw::factorization::default_variant(cw::factorization::ObjectiveTag::F2FracSqrt);
        cfg.rng_seed = seed;
        const auto out = cw::factorization::factor(
            cw::factorization::Semiprime(392913607), cw::factorization::ObjectiveTag::F2FracSqrt,
            cfg);
        if (out.factors) ++hits;
    }
    if (hits < 1) return fail("392913607 never factored in three attempts");
    return pass();
}

// ---------------------------------------------------------------------------
// C9: a grouped result table over two targets and two objectives, with the
// per-objective default variants, exports a complete and byte-stable CSV.

Result c9_table_export() {
    namespace ex = cw::experiments;
    namespace fz = cw::factorization;

    const auto build = [] {
        ex::ExperimentPlan plan;
        plan.n_runs = 30;
        plan.base_seed = 42;
        struct Cell {
            std::uint64_t n;
            fz::ObjectiveTag tag;
            int agents, iters;
        };
        const std::vector<Cell> cells = {
            {50759, fz::ObjectiveTag::F1Modular, 30, 100},
            {50759, fz::ObjectiveTag::F2FracSqrt, 30, 100},
            {370627, fz::ObjectiveTag::F1Modular, 30, 200},
            {370627, fz::ObjectiveTag::F2FracSqrt, 30, 200},
        };
        ex::ResultTable table;
        for (const auto& c : cells) {
            ex::ObjectiveEntry entry{ex::FactorTarget{fz::Semiprime(c.n), c.tag},
                                     c.agents, c.iters};
            const auto variant = fz::default_variant(c.tag);
            table.push_back({ex::variant_label(variant),
                             ex::objective_label(entry.ref),
                             ex::run_cell(entry, variant, plan)});
        }
        return ex::export_csv(table);
    };

    const std::string csv = build();
    if (build() != csv) return fail("rerun produced different bytes");

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    if (line != "map,objective,mean,sd,sr_percent,sr_count,mi,sd_iter")
        return fail("unexpected header");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        int fields = 1;
        for (char ch : line)
            if (ch == ',') ++fields;
        if (fields != 8) return fail("row with " + std::to_string(fields) + " fields");
        if (line.find(",,") != std::string::npos || line.back() == ',')
            return fail("row with empty statistics: " + line);
    }
    if (rows != 4) return fail("expected 4 data rows, got " + std::to_string(rows));
    return pass();
}

// ---------------------------------------------------------------------------
// C10: map iterates stay strictly inside their native ranges, sequences are
// reproducible, and the logistic map shows sensitive dependence.

Result c10_map_properties() {
    namespace ch = cw::chaos;
    for (const auto tag : ch::kAllMaps) {
        const auto kind = ch::make_map(tag);
        const auto range = ch::native_range(kind);
        cw::rng::Xoshiro256ss rng(1000 + static_cast<std::uint64_t>(tag));
        for (int s = 0; s < 1000; ++s) {
            auto st = ch::seed_state(kind, rng);
            for (int i = 0; i < 100000; ++i) {
                const double x = ch::next(st);
                if (!std::isfinite(x) || x <= range.lo || x >= range.hi)
                    return fail(ch::map_name(tag) + " left its range: " + fmt(x));
            }
        }
        cw::rng::Xoshiro256ss ra(5), rb(5);
        auto sa = ch::seed_state(kind, ra);
        auto sb = ch::seed_state(kind, rb);
        if (ch::sample_sequence(sa, 50) != ch::sample_sequence(sb, 50))
            return fail(ch::map_name(tag) + " not reproducible");
    }

    const auto kind = ch::make_map(ch::MapTag::Logistic);
    auto a = ch::state_from_native(kind, 0.2);
    auto b = ch::state_from_native(kind, 0.2 + 1e-10);
    if (!a || !b) return fail("logistic start state rejected");
    bool diverged = false;
    for (int k = 0; k < 100 && !diverged; ++k)
        diverged = std::fabs(ch::next(*a) - ch::next(*b)) > 0.1;
    if (!diverged) return fail("logistic trajectories failed to diverge");
    return pass();
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Result()> check;
    };
    const std::vector<Criterion> criteria = {
        {"exact integer layer matches trial division", c1_integer_layer},
        {"registered benchmarks attain their reference optima", c2_benchmark_optima},
        {"baseline solves sphere to 1e-15 in all 30 runs", c3_sphere_baseline},
        {"baseline fully reliable on ackley and goldstein-price", c4_ackley_goldstein_baseline},
        {"sinusoidal 'a' schedule gains >= 5 orders on sphere", c5_chaotic_a_accuracy},
        {"chaotic 'a' keeps late-run exploration alive", c6_late_exploration},
        {"50759 factored reliably within 100 iterations", c7_factor_small},
        {"10909343 and 392913607 factored at preset budgets", c8_factor_medium},
        {"grouped result table is complete and byte-stable", c9_table_export},
        {"maps in range, reproducible, and chaos-sensitive", c10_map_properties},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r{false, "unhandled exception"};
        try {
            r = criteria[i].check();
        } catch (const std::exception& e) {
            r = fail(std::string("exception: ") + e.what());
        }
        if (!r.ok) ++failures;
        std::printf("[%s] C%zu %s%s%s\n", r.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, r.detail.empty() ? "" : " — ",
                    r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
