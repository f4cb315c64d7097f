#pragma once

// Experiment driver: a single JSON config describes a plan family, operand
// source, machine grid, parallel grid, and analysis toggles; run_experiment
// executes every grid point deterministically and writes one CSV per
// analysis plus a summary of measured-to-bound ratios. Identical configs
// (including seeds) produce byte-identical outputs.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hymul/bounds.hpp"
#include "hymul/census.hpp"
#include "hymul/csv.hpp"
#include "hymul/errors.hpp"
#include "hymul/lemmas.hpp"
#include "hymul/memsim.hpp"
#include "hymul/parsim.hpp"
#include "hymul/plan.hpp"
#include "hymul/plan_json.hpp"
#include "hymul/toom.hpp"

namespace hymul {

struct PlanSpec {
    enum class Kind { Standard, Uniform, Random, Inline };
    Kind kind = Kind::Uniform;
    std::uint32_t k = 2;    // uniform
    std::size_t n0 = 8;     // uniform
    std::uint64_t seed = 1; // random
    nlohmann::json inline_tree;
};

struct ValueSpec {
    bool explicit_values = false;
    std::optional<std::uint64_t> seed; // defaults to the master seed
    DigitString a, b;                  // explicit operands
};

struct ExperimentConfig {
    std::uint32_t base = 10;
    PlanSpec plan;
    std::vector<std::size_t> sizes;
    ValueSpec values;

    std::vector<std::size_t> cache_sizes{64}; // machine.M
    std::vector<std::size_t> block_sizes{1};  // machine.B
    std::vector<Policy> policies{Policy::LRU};

    std::vector<std::uint64_t> procs;           // parallel.P (empty: no parallel runs)
    std::vector<std::uint64_t> message_sizes{1}; // parallel.B_m
    std::vector<Strategy> strategies{Strategy::OwnerComputesBlocks,
                                     Strategy::SubtreePerProcessor};

    bool analyze_simulate = true;
    bool analyze_bounds = true;
    bool analyze_lemmas = false;
    bool analyze_census = false;

    std::uint64_t seed = 1;
    int lemma_samples = 8;
    bool lemma_cross_check = true;

    std::uint64_t value_seed() const { return values.seed ? *values.seed : seed; }

    void validate() const {
        check_base(base);
        if (sizes.empty()) throw ConfigError("sizes: at least one input size is required");
        for (std::size_t n : sizes)
            if (n == 0) throw ConfigError("sizes: input sizes must be at least 1");
        if (plan.kind == PlanSpec::Kind::Uniform) {
            if (plan.k < 2) throw ConfigError("plan.k: split arity must be at least 2");
            if (plan.n0 == 0) throw ConfigError("plan.n0: cutoff must be at least 1");
        }
        if (cache_sizes.empty()) throw ConfigError("machine.M: at least one cache size is required");
        if (block_sizes.empty()) throw ConfigError("machine.B: at least one block size is required");
        if (policies.empty()) throw ConfigError("machine.policies: at least one policy is required");
        std::size_t min_m = *std::min_element(cache_sizes.begin(), cache_sizes.end());
        for (std::size_t m : cache_sizes)
            if (m == 0) throw ConfigError("machine.M: cache sizes must be at least 1");
        for (std::size_t b : block_sizes) {
            if (b == 0) throw ConfigError("machine.B: block sizes must be at least 1");
            if (b > min_m)
                throw ConfigError("machine.B: block size " + std::to_string(b) +
                                  " exceeds cache size " + std::to_string(min_m));
        }
        for (std::uint64_t p : procs)
            if (p == 0) throw ConfigError("parallel.P: processor counts must be at least 1");
        for (std::uint64_t bm : message_sizes) {
            if (bm == 0) throw ConfigError("parallel.B_m: message sizes must be at least 1");
            if (!procs.empty() && bm > min_m)
                throw ConfigError("parallel.B_m: message size " + std::to_string(bm) +
                                  " exceeds cache size " + std::to_string(min_m));
        }
        if (!procs.empty() && strategies.empty())
            throw ConfigError("parallel.strategies: at least one strategy is required");
        if (analyze_lemmas) {
            for (std::size_t n : sizes)
                if (n > 48)
                    throw ConfigError("analyses: lemma certification uses exact minimum "
                                      "vertex cuts and supports sizes up to 48, got " +
                                      std::to_string(n));
        }
        if (lemma_samples < 1) throw ConfigError("lemma_samples: must be at least 1");
        if (values.explicit_values) {
            check_base(values.a.base);
            if (values.a.base != base || values.b.base != base)
                throw ConfigError("values: explicit operands must use the configured base");
            for (std::uint32_t d : values.a.digits)
                if (d >= base) throw ConfigError("values.a: digit out of range for the base");
            for (std::uint32_t d : values.b.digits)
                if (d >= base) throw ConfigError("values.b: digit out of range for the base");
        }
    }
};

namespace detail {

template <typename T>
inline std::vector<T> parse_list(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw ConfigError(field + ": expected a non-empty array of numbers");
    std::vector<T> out;
    for (const auto& v : j) {
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError(field + ": expected a non-empty array of numbers");
        out.push_back(v.get<T>());
    }
    return out;
}

inline DigitString parse_operand(const nlohmann::json& j, std::uint32_t base,
                                 const std::string& field) {
    DigitString v;
    v.base = base;
    if (j.is_array()) {
        for (const auto& d : j) {
            if (!d.is_number_unsigned() && !d.is_number_integer())
                throw ConfigError(field + ": digits must be numbers");
            v.digits.push_back(d.get<std::uint32_t>());
        }
    } else if (j.is_object()) {
        if (!j.contains("digits"))
            throw ConfigError(field + ": expected 'digits' (least significant first)");
        for (const auto& d : j.at("digits")) v.digits.push_back(d.get<std::uint32_t>());
        if (j.contains("sign")) v.sign = j.at("sign").get<int>() < 0 ? -1 : +1;
    } else {
        throw ConfigError(field + ": expected an array of digits or an object");
    }
    normalize(v);
    return v;
}

} // namespace detail

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    ExperimentConfig cfg;

    if (j.contains("base")) cfg.base = j.at("base").get<std::uint32_t>();

    if (!j.contains("plan")) throw ConfigError("plan: required field is missing");
    const auto& pj = j.at("plan");
    if (!pj.is_object() || !pj.contains("type"))
        throw ConfigError("plan.type: one of standard|uniform|random|inline is required");
    std::string ptype = pj.at("type").get<std::string>();
    if (ptype == "standard") {
        cfg.plan.kind = PlanSpec::Kind::Standard;
    } else if (ptype == "uniform") {
        cfg.plan.kind = PlanSpec::Kind::Uniform;
        if (!pj.contains("k") || !pj.contains("n0"))
            throw ConfigError("plan: uniform plans require fields k and n0");
        cfg.plan.k = pj.at("k").get<std::uint32_t>();
        cfg.plan.n0 = pj.at("n0").get<std::size_t>();
    } else if (ptype == "random") {
        cfg.plan.kind = PlanSpec::Kind::Random;
        if (pj.contains("seed")) cfg.plan.seed = pj.at("seed").get<std::uint64_t>();
    } else if (ptype == "inline") {
        cfg.plan.kind = PlanSpec::Kind::Inline;
        if (!pj.contains("tree")) throw ConfigError("plan.tree: inline plans require a tree");
        cfg.plan.inline_tree = pj.at("tree");
    } else {
        throw ConfigError("plan.type: one of standard|uniform|random|inline is required");
    }

    if (!j.contains("sizes")) throw ConfigError("sizes: required field is missing");
    cfg.sizes = detail::parse_list<std::size_t>(j.at("sizes"), "sizes");

    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("values")) {
        const auto& vj = j.at("values");
        if (!vj.is_object() || !vj.contains("type"))
            throw ConfigError("values.type: one of random|explicit is required");
        std::string vtype = vj.at("type").get<std::string>();
        if (vtype == "random") {
            if (vj.contains("seed")) cfg.values.seed = vj.at("seed").get<std::uint64_t>();
        } else if (vtype == "explicit") {
            cfg.values.explicit_values = true;
            if (!vj.contains("a") || !vj.contains("b"))
                throw ConfigError("values: explicit values require fields a and b");
            cfg.values.a = detail::parse_operand(vj.at("a"), cfg.base, "values.a");
            cfg.values.b = detail::parse_operand(vj.at("b"), cfg.base, "values.b");
        } else {
            throw ConfigError("values.type: one of random|explicit is required");
        }
    }

    if (j.contains("machine")) {
        const auto& mj = j.at("machine");
        if (mj.contains("M")) cfg.cache_sizes = detail::parse_list<std::size_t>(mj.at("M"), "machine.M");
        if (mj.contains("B")) cfg.block_sizes = detail::parse_list<std::size_t>(mj.at("B"), "machine.B");
        if (mj.contains("policies")) {
            cfg.policies.clear();
            for (const auto& p : mj.at("policies")) {
                std::string name = p.get<std::string>();
                if (name == "lru")
                    cfg.policies.push_back(Policy::LRU);
                else if (name == "ideal")
                    cfg.policies.push_back(Policy::IdealOffline);
                else
                    throw ConfigError("machine.policies: unknown policy '" + name + "'");
            }
        }
    }

    if (j.contains("parallel")) {
        const auto& gj = j.at("parallel");
        if (!gj.contains("P")) throw ConfigError("parallel.P: required when a parallel grid is given");
        cfg.procs = detail::parse_list<std::uint64_t>(gj.at("P"), "parallel.P");
        if (gj.contains("B_m"))
            cfg.message_sizes = detail::parse_list<std::uint64_t>(gj.at("B_m"), "parallel.B_m");
        if (gj.contains("strategies")) {
            cfg.strategies.clear();
            for (const auto& s : gj.at("strategies")) {
                auto st = strategy_from_name(s.get<std::string>());
                if (!st)
                    throw ConfigError("parallel.strategies: unknown strategy '" +
                                      s.get<std::string>() + "'");
                cfg.strategies.push_back(*st);
            }
        }
    }

    if (j.contains("analyses")) {
        cfg.analyze_simulate = cfg.analyze_bounds = cfg.analyze_lemmas = cfg.analyze_census = false;
        if (!j.at("analyses").is_array())
            throw ConfigError("analyses: expected an array of analysis names");
        for (const auto& a : j.at("analyses")) {
            std::string name = a.get<std::string>();
            if (name == "simulate")
                cfg.analyze_simulate = true;
            else if (name == "bounds")
                cfg.analyze_bounds = true;
            else if (name == "lemmas")
                cfg.analyze_lemmas = true;
            else if (name == "census")
                cfg.analyze_census = true;
            else
                throw ConfigError("analyses: unknown analysis '" + name + "'");
        }
    }

    if (j.contains("lemma_samples")) cfg.lemma_samples = j.at("lemma_samples").get<int>();
    if (j.contains("lemma_cross_check"))
        cfg.lemma_cross_check = j.at("lemma_cross_check").get<bool>();

    cfg.validate();
    return cfg;
}

inline ExperimentConfig experiment_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return experiment_config_from_json(j);
}

// Per-analysis outcome: ratios are measured / bound where a positive bound
// exists; failures count dominance violations (measured below the bound)
// and failed lemma instances.
struct AnalysisStats {
    std::uint64_t rows = 0;
    std::uint64_t skipped = 0;
    std::uint64_t failures = 0;
    std::vector<double> ratios;

    double min_ratio() const {
        return ratios.empty() ? 0.0 : *std::min_element(ratios.begin(), ratios.end());
    }
    double max_ratio() const {
        return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
    }
    double median_ratio() const {
        if (ratios.empty()) return 0.0;
        std::vector<double> s = ratios;
        std::sort(s.begin(), s.end());
        std::size_t m = s.size() / 2;
        return s.size() % 2 ? s[m] : 0.5 * (s[m - 1] + s[m]);
    }
};

struct ExperimentSummary {
    std::map<std::string, AnalysisStats> analyses;

    std::uint64_t total_failures() const {
        std::uint64_t f = 0;
        for (const auto& [name, st] : analyses) f += st.failures;
        return f;
    }
    bool ok() const { return total_failures() == 0; }

    std::string to_text() const {
        std::string out;
        for (const auto& [name, st] : analyses) {
            out += name + ": rows=" + std::to_string(st.rows) +
                   " skipped=" + std::to_string(st.skipped) +
                   " failures=" + std::to_string(st.failures);
            if (!st.ratios.empty())
                out += " ratio[min/med/max]=" + csv_num(st.min_ratio()) + "/" +
                       csv_num(st.median_ratio()) + "/" + csv_num(st.max_ratio());
            out += "\n";
        }
        return out;
    }
};

namespace detail {

inline std::unique_ptr<InstructionTree> build_plan(const ExperimentConfig& cfg, std::size_t n) {
    switch (cfg.plan.kind) {
        case PlanSpec::Kind::Standard:
            return standard_plan();
        case PlanSpec::Kind::Uniform:
            return uniform_plan(n, cfg.plan.k, cfg.plan.n0, cfg.base);
        case PlanSpec::Kind::Random:
            return random_plan(n, cfg.plan.seed, {2, 3, 4}, 0.25, cfg.base);
        case PlanSpec::Kind::Inline:
        default: {
            auto p = plan_from_json(cfg.plan.inline_tree);
            validate_plan(*p, n, cfg.base);
            return p;
        }
    }
}

inline DigitString random_operand(std::mt19937_64& rng, std::size_t n, std::uint32_t base) {
    DigitString v;
    v.base = base;
    v.digits.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        v.digits[i] = static_cast<std::uint32_t>(rng() % base);
    v.digits.back() = static_cast<std::uint32_t>(1 + rng() % (base - 1));
    return v;
}

inline std::pair<DigitString, DigitString> operands_for(const ExperimentConfig& cfg,
                                                        std::size_t n) {
    if (cfg.values.explicit_values) return {cfg.values.a, cfg.values.b};
    std::mt19937_64 rng(cfg.value_seed() ^ (0x9e3779b97f4a7c15ull * (n + 1)));
    DigitString a = random_operand(rng, n, cfg.base);
    DigitString b = random_operand(rng, n, cfg.base);
    return {a, b};
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Largest applicable memory-independent lower bound for one parallel run,
// using the run's own input balance alpha and measured product balance beta.
inline double parallel_bound(const ExperimentConfig& cfg, const InstructionTree& plan,
                             std::size_t n, std::uint64_t P, std::uint64_t B_m, double alpha,
                             double beta) {
    double g = memind_bound_general(plan, n, cfg.base, P, B_m, alpha).value;
    bool balanced_input = alpha == 1.0;
    if (plan.is_standard()) {
        if (balanced_input) g = std::max(g, memind_bound_standard(n, P, B_m).value);
        if (beta > 0.0 && beta <= 1.0)
            g = std::max(g, balanced_comp_bound_standard(n, P, B_m, beta).value);
    } else if (cfg.plan.kind == PlanSpec::Kind::Uniform) {
        if (balanced_input)
            g = std::max(g, memind_bound_uniform(n, P, B_m, cfg.plan.k, cfg.plan.n0).value);
        if (beta > 0.0 && beta <= 1.0) {
            try {
                g = std::max(g, balanced_comp_bound_uniform(n, P, B_m, beta, cfg.plan.k,
                                                            cfg.plan.n0)
                                    .value);
            } catch (const RegimeError&) {
                // formula out of regime for this (n, P, n0); other bounds stand
            }
        }
    }
    return g;
}

inline std::string bound_terms_text(const BoundReport& r) {
    std::string out;
    for (const auto& [name, value] : r.terms) {
        if (!out.empty()) out += ';';
        out += name + "=" + csv_num(value);
    }
    return out;
}

} // namespace detail

inline ExperimentSummary run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* f) { return out_dir + "/" + f; };

    ExperimentSummary summary;
    AnalysisStats& io_stats = summary.analyses["simulate"];
    AnalysisStats& bound_stats = summary.analyses["bounds"];
    AnalysisStats& par_stats = summary.analyses["parallel"];
    AnalysisStats& lemma_stats = summary.analyses["lemmas"];
    AnalysisStats& census_stats = summary.analyses["census"];

    std::unique_ptr<CsvWriter> io_csv, bounds_csv, par_csv, lemmas_csv, census_csv;
    if (cfg.analyze_simulate)
        io_csv = std::make_unique<CsvWriter>(
            path("io.csv"),
            std::vector<std::string>{"run_id", "plan_hash", "n", "s", "M", "B", "policy",
                                     "reads", "writes", "total", "bound_total", "ratio"});
    if (cfg.analyze_bounds)
        bounds_csv = std::make_unique<CsvWriter>(
            path("bounds.csv"),
            std::vector<std::string>{"run_id", "regime", "value", "terms"});
    if (cfg.analyze_simulate && !cfg.procs.empty())
        par_csv = std::make_unique<CsvWriter>(
            path("parallel.csv"),
            std::vector<std::string>{"run_id", "strategy", "n", "P", "B_m", "alpha",
                                     "beta_measured", "max_words", "max_messages", "bound",
                                     "ratio"});
    if (cfg.analyze_lemmas)
        lemmas_csv = std::make_unique<CsvWriter>(
            path("lemmas.csv"),
            std::vector<std::string>{"lemma", "params", "required", "achieved", "pass"});
    if (cfg.analyze_census)
        census_csv = std::make_unique<CsvWriter>(
            path("census.csv"),
            std::vector<std::string>{"run_id", "n", "threshold", "nu", "nu1", "nu2",
                                     "sum_sq_type1", "t_card", "window_count"});

    std::uint64_t run_id = 0;

    for (std::size_t n : cfg.sizes) {
        auto plan = detail::build_plan(cfg, n);
        validate_plan(*plan, n, cfg.base);
        auto [a, b] = detail::operands_for(cfg, n);
        // All measured rows and bounds describe the multiplication actually
        // performed; with explicit operands that size can differ from the
        // nominal plan size.
        std::size_t n_run = std::max<std::size_t>({a.size(), b.size(), 1});
        std::string phash = detail::hash_hex(plan_hash(*plan));

        std::optional<ExecutionTrace> trace;
        auto ensure_trace = [&]() -> ExecutionTrace& {
            if (!trace) trace = record_trace(a, b, *plan);
            return *trace;
        };

        if (cfg.analyze_simulate || cfg.analyze_bounds) {
            for (std::size_t M : cfg.cache_sizes) {
                ScheduleOrder order;
                if (cfg.analyze_simulate) order = cache_aware_schedule(ensure_trace(), M);
                for (std::size_t B : cfg.block_sizes) {
                    BoundReport seq_bound = seq_bound_general(*plan, n_run, cfg.base, M, B);
                    double bound_total = seq_bound.value;
                    for (Policy pol : cfg.policies) {
                        ++run_id;
                        if (cfg.analyze_bounds) {
                            bounds_csv->row({csv_num(run_id), seq_bound.regime,
                                             csv_num(seq_bound.value),
                                             detail::bound_terms_text(seq_bound)});
                            ++bound_stats.rows;
                        }
                        if (!cfg.analyze_simulate) continue;
                        MachineConfig mc;
                        mc.M = M;
                        mc.B = B;
                        mc.policy = pol;
                        IoReport rep;
                        try {
                            rep = simulate_io(ensure_trace(), mc, &order);
                        } catch (const InfeasibleSchedule&) {
                            ++io_stats.skipped;
                            continue;
                        }
                        double total = static_cast<double>(rep.total());
                        double ratio = bound_total > 0.0 ? total / bound_total : 0.0;
                        if (total < bound_total || rep.parsimony_violations != 0)
                            ++io_stats.failures;
                        if (bound_total > 0.0) io_stats.ratios.push_back(ratio);
                        ++io_stats.rows;
                        io_csv->row({csv_num(run_id), phash, csv_num((std::uint64_t)n_run),
                                     csv_num((std::uint64_t)cfg.base),
                                     csv_num((std::uint64_t)M), csv_num((std::uint64_t)B),
                                     policy_name(pol), csv_num(rep.reads),
                                     csv_num(rep.writes), csv_num(rep.total()),
                                     csv_num(bound_total),
                                     bound_total > 0.0 ? csv_num(ratio) : std::string()});
                    }
                }
            }
        }

        if (cfg.analyze_simulate && !cfg.procs.empty()) {
            for (Strategy strat : cfg.strategies) {
                for (std::uint64_t P : cfg.procs) {
                    for (std::uint64_t B_m : cfg.message_sizes) {
                        ++run_id;
                        ParallelLayout lay = balanced_input_layout(n_run, P, cfg.seed, B_m);
                        ParallelResult res;
                        try {
                            res = run_parallel(a, b, *plan, lay, strat);
                        } catch (const StrategyError&) {
                            ++par_stats.skipped;
                            continue;
                        }
                        DigitString seq = multiply(a, b, *plan);
                        double alpha = lay.alpha();
                        double beta = res.report.beta_measured;
                        double bound = detail::parallel_bound(cfg, *plan, n_run, P, B_m, alpha, beta);
                        double words = static_cast<double>(res.report.max_words);
                        if (!same_value(res.product, seq) || words < bound - 1e-9)
                            ++par_stats.failures;
                        double ratio = bound > 0.0 ? words / bound : 0.0;
                        if (bound > 0.0) par_stats.ratios.push_back(ratio);
                        ++par_stats.rows;
                        par_csv->row({csv_num(run_id), strategy_name(strat),
                                      csv_num((std::uint64_t)n_run), csv_num(P), csv_num(B_m),
                                      csv_num(alpha), csv_num(beta),
                                      csv_num(res.report.max_words),
                                      csv_num(res.report.max_messages), csv_num(bound),
                                      bound > 0.0 ? csv_num(ratio) : std::string()});
                    }
                }
            }
        }

        if (cfg.analyze_lemmas) {
            std::size_t thr = std::max<std::size_t>(2, n_run / 2);
            MspCensus c = census(*plan, n_run, thr, cfg.base);
            LemmaReport rep = verify_lemmas(ensure_trace(), c, cfg.seed, cfg.lemma_samples,
                                            cfg.lemma_cross_check);
            for (const auto& row : rep.rows) {
                lemmas_csv->row({row.lemma, row.params, csv_num(static_cast<std::uint64_t>(row.required)),
                                 csv_num(static_cast<std::uint64_t>(row.achieved)), row.pass ? "1" : "0"});
                ++lemma_stats.rows;
                if (!row.pass) ++lemma_stats.failures;
                if (row.required > 0)
                    lemma_stats.ratios.push_back(static_cast<double>(row.achieved) /
                                                 static_cast<double>(row.required));
            }
        }

        if (cfg.analyze_census) {
            for (std::size_t M : cfg.cache_sizes) {
                ++run_id;
                MspCensus c = census(*plan, n_run, 8 * M, cfg.base);
                census_csv->row({csv_num(run_id), csv_num((std::uint64_t)n_run),
                                 csv_num((std::uint64_t)(8 * M)), csv_num((std::uint64_t)c.nu()),
                                 csv_num((std::uint64_t)c.nu1()), csv_num((std::uint64_t)c.nu2()),
                                 csv_num(c.sum_sq_type1), csv_num(c.t_card()),
                                 csv_num(c.window_count_exact)});
                ++census_stats.rows;
            }
        }
    }

    CsvWriter summary_csv(path("summary.csv"),
                          {"analysis", "rows", "skipped", "failures", "min_ratio",
                           "median_ratio", "max_ratio"});
    for (const auto& [name, st] : summary.analyses) {
        summary_csv.row({name, csv_num(st.rows), csv_num(st.skipped), csv_num(st.failures),
                         st.ratios.empty() ? std::string() : csv_num(st.min_ratio()),
                         st.ratios.empty() ? std::string() : csv_num(st.median_ratio()),
                         st.ratios.empty() ? std::string() : csv_num(st.max_ratio())});
    }
    return summary;
}

} // namespace hymul
