// Experiment driver: config parsing with field-naming diagnostics,
// end-to-end runs over small grids, CSV output shape, and byte-level
// determinism of repeated runs.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hymul/experiment.hpp"

using namespace hymul;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t c = 0;
    for (char ch : text)
        if (ch == '\n') ++c;
    return c;
}

json base_config() {
    return json::parse(R"({
        "base": 10,
        "plan": {"type": "uniform", "k": 2, "n0": 8},
        "sizes": [64],
        "machine": {"M": [8, 16], "B": [1]},
        "analyses": ["simulate", "bounds"],
        "seed": 7
    })");
}

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("hymul_cli_" + tag);
    std::filesystem::remove_all(p);
    return p.string();
}

} // namespace

TEST_CASE("csv formatting is deterministic and delimiter-safe") {
    REQUIRE(csv_num(1.5) == "1.5");
    REQUIRE(csv_num(2.0 / 3.0) == "0.6666666667");
    REQUIRE(csv_num(std::uint64_t{4096}) == "4096");
    REQUIRE(csv_cell("a,b\nc") == "a;b;c");
}

TEST_CASE("config parser reports the offending field") {
    json cfg = base_config();

    cfg.erase("plan");
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("plan"));

    cfg = base_config();
    cfg["machine"]["B"] = {32};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("machine.B"));

    cfg = base_config();
    cfg["machine"]["policies"] = {"fifo"};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("machine.policies"));

    cfg = base_config();
    cfg["analyses"] = {"simulate", "plot"};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("analyses"));

    cfg = base_config();
    cfg["plan"] = {{"type", "uniform"}, {"k", 2}};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("n0"));

    cfg = base_config();
    cfg["values"] = {{"type", "explicit"}, {"a", {3, 11}}, {"b", {1}}};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("values.a"));

    cfg = base_config();
    cfg["parallel"] = {{"P", {4}}, {"strategies", {"magic"}}};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("parallel.strategies"));

    cfg = base_config();
    cfg["analyses"] = {"lemmas"};
    cfg["sizes"] = {64};
    REQUIRE_THROWS_WITH(experiment_config_from_json(cfg),
                        Catch::Matchers::ContainsSubstring("lemma"));
}

TEST_CASE("malformed config files are reported as config errors") {
    auto dir = std::filesystem::temp_directory_path() / "hymul_cli_badcfg";
    std::filesystem::create_directories(dir);
    auto file = dir / "bad.json";
    std::ofstream(file.string()) << "{ not json";
    REQUIRE_THROWS_AS(experiment_config_from_file(file.string()), ConfigError);
    REQUIRE_THROWS_AS(experiment_config_from_file((dir / "missing.json").string()), ConfigError);
}

TEST_CASE("sequential sweep writes one row per grid point with dominant ratios") {
    ExperimentConfig cfg = experiment_config_from_json(base_config());
    std::string out = temp_dir("seq");
    ExperimentSummary s = run_experiment(cfg, out);

    REQUIRE(s.ok());
    REQUIRE(s.analyses.at("simulate").rows == 2);
    REQUIRE(s.analyses.at("bounds").rows == 2);
    REQUIRE(s.analyses.at("simulate").failures == 0);
    REQUIRE(s.analyses.at("simulate").min_ratio() >= 1.0);

    std::string io = slurp(out + "/io.csv");
    REQUIRE(line_count(io) == 3); // header + one row per (M, B, policy)
    REQUIRE(io.rfind("run_id,plan_hash,n,s,M,B,policy,reads,writes,total,bound_total,ratio", 0) == 0);
    std::string bounds = slurp(out + "/bounds.csv");
    REQUIRE(line_count(bounds) == 3);
    REQUIRE(slurp(out + "/summary.csv").find("simulate,2,0,0") != std::string::npos);
}

TEST_CASE("lemma analysis certifies small quadratic instances") {
    json j = base_config();
    j["plan"] = {{"type", "standard"}};
    j["sizes"] = {8};
    j["analyses"] = {"lemmas", "census"};
    ExperimentConfig cfg = experiment_config_from_json(j);
    std::string out = temp_dir("lem");
    ExperimentSummary s = run_experiment(cfg, out);

    REQUIRE(s.ok());
    REQUIRE(s.analyses.at("lemmas").rows >= 16);
    REQUIRE(s.analyses.at("lemmas").failures == 0);
    REQUIRE(s.analyses.at("lemmas").min_ratio() >= 1.0);
    REQUIRE(s.analyses.at("census").rows == 2);

    std::string lem = slurp(out + "/lemmas.csv");
    REQUIRE(lem.rfind("lemma,params,required,achieved,pass", 0) == 0);
    REQUIRE(lem.find(",0\n") == std::string::npos); // no failing rows
}

TEST_CASE("parallel grid rows carry strategy and balance columns") {
    json j = base_config();
    j["parallel"] = {{"P", {3, 9}}, {"B_m", {1}}, {"strategies", {"subtree-per-processor"}}};
    j["analyses"] = {"simulate"};
    ExperimentConfig cfg = experiment_config_from_json(j);
    std::string out = temp_dir("par");
    ExperimentSummary s = run_experiment(cfg, out);

    REQUIRE(s.ok());
    REQUIRE(s.analyses.at("parallel").rows == 2);
    REQUIRE(s.analyses.at("parallel").failures == 0);
    std::string par = slurp(out + "/parallel.csv");
    REQUIRE(par.rfind("run_id,strategy,n,P,B_m,alpha,beta_measured,max_words,max_messages,bound,ratio",
                      0) == 0);
    REQUIRE(par.find("subtree-per-processor,64,3,1,") != std::string::npos);
}

TEST_CASE("infeasible cache points are skipped deterministically") {
    // M=8 with B=4 leaves only two frames; an elementary product can pin
    // three distinct blocks, so the schedule is infeasible and excluded.
    json j = base_config();
    j["machine"] = {{"M", {8}}, {"B", {4}}};
    ExperimentConfig cfg = experiment_config_from_json(j);
    std::string out = temp_dir("skip");
    ExperimentSummary s = run_experiment(cfg, out);
    REQUIRE(s.ok());
    REQUIRE(s.analyses.at("simulate").rows == 0);
    REQUIRE(s.analyses.at("simulate").skipped == 1);
}

TEST_CASE("identical configs produce byte-identical outputs") {
    json j = base_config();
    j["parallel"] = {{"P", {3}}, {"B_m", {1}}, {"strategies", {"subtree-per-processor"}}};
    j["analyses"] = {"simulate", "bounds", "census"};
    ExperimentConfig cfg = experiment_config_from_json(j);

    std::string out1 = temp_dir("det1"), out2 = temp_dir("det2");
    run_experiment(cfg, out1);
    run_experiment(cfg, out2);
    for (const char* f : {"io.csv", "bounds.csv", "parallel.csv", "census.csv", "summary.csv"})
        REQUIRE(slurp(out1 + "/" + f) == slurp(out2 + "/" + f));

    // A different value seed changes the measured rows.
    ExperimentConfig other = cfg;
    other.values.seed = 999;
    std::string out3 = temp_dir("det3");
    run_experiment(other, out3);
    REQUIRE(slurp(out1 + "/io.csv") != slurp(out3 + "/io.csv"));
}

TEST_CASE("explicit operands flow through the pipeline") {
    json j = base_config();
    j["sizes"] = {16};
    j["machine"] = {{"M", {32}}, {"B", {1}}};
    j["values"] = {{"type", "explicit"},
                   {"a", {1, 2, 3, 4}},
                   {"b", json::object({{"digits", {5, 6}}, {"sign", -1}})}};
    ExperimentConfig cfg = experiment_config_from_json(j);
    REQUIRE(cfg.values.explicit_values);
    REQUIRE(cfg.values.b.sign == -1);

    std::string out = temp_dir("expl");
    ExperimentSummary s = run_experiment(cfg, out);
    REQUIRE(s.ok());
    REQUIRE(s.analyses.at("simulate").rows == 1);
}
