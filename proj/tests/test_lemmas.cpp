#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "hymul/lemmas.hpp"
#include "hymul/memsim.hpp"
#include "hymul/plan.hpp"
#include "reference.hpp"

using namespace hymul;

namespace {

std::unique_ptr<InstructionTree> one_level_toom(int k) {
    auto plan = std::make_unique<InstructionTree>();
    plan->k = k;
    plan->pts = default_points(k);
    for (int i = 0; i < 2 * k - 1; ++i) plan->children.push_back(std::make_unique<InstructionTree>());
    return plan;
}

} // namespace

TEST_CASE("marked sets follow the half-window conventions") {
    std::mt19937_64 rng(5);
    auto a = ref::random_value(rng, 12, 10, false);
    auto b = ref::random_value(rng, 12, 10, false);
    auto plan = one_level_toom(2);
    ExecutionTrace tr = record_trace(a, b, *plan);
    MspCensus census = ::hymul::census(*plan, 12, 4, 10);
    REQUIRE(census.nu1() == 3); // the three standard children are the maximal subproblems
    std::vector<MspMarks> marks = msp_marks(tr, census);
    REQUIRE(marks.size() == 3);
    for (const auto& m : marks) {
        REQUIRE(m.type1);
        REQUIRE(m.size >= 4);
        // low-half inputs of both operands
        REQUIRE(m.y_low_inputs.size() <= 2 * ((m.size + 1) / 2));
        REQUIRE(!m.y_low_inputs.empty());
        REQUIRE(!m.z_mid_outputs.empty());
        for (auto [j, l] : m.t_indices) {
            REQUIRE(j <= (m.size - 1) / 2);
            REQUIRE(l <= (m.size - 1) / 2);
            REQUIRE(4 * (j + l) >= m.size);
            REQUIRE(4 * (j + l) <= 3 * m.size);
        }
    }
}

TEST_CASE("every singleton from the low input digits needs a nonempty dominator") {
    std::mt19937_64 rng(17);
    auto a = ref::random_value(rng, 8, 10, false);
    auto b = ref::random_value(rng, 8, 10, false);
    auto plan = one_level_toom(2);
    ExecutionTrace tr = record_trace(a, b, *plan);
    MspCensus census = ::hymul::census(*plan, 8, 2, 10);
    Cdag g = build_cdag(tr);
    for (const auto& m : msp_marks(tr, census))
        for (NodeId y : m.y_low_inputs) REQUIRE(min_dominator(g, g.inputs, {y}).size >= 1);
}

TEST_CASE("three mid-window output digits of a six-digit product need two cut vertices") {
    std::mt19937_64 rng(23);
    auto a = ref::random_value(rng, 6, 10, false);
    auto b = ref::random_value(rng, 6, 10, false);
    ExecutionTrace tr = record_trace(a, b, *standard_plan());
    Cdag g = build_cdag(tr);
    std::vector<NodeId> z{tr.output_ids[3], tr.output_ids[4], tr.output_ids[5]};
    for (NodeId v : z) REQUIRE(v >= 0);
    REQUIRE(min_dominator(g, g.inputs, z).size >= 2); // ceil(3/2)
}

TEST_CASE("lemma certification passes on standard traces") {
    std::mt19937_64 rng(41);
    for (std::size_t n : {8, 12, 16}) {
        auto a = ref::random_value(rng, n, 10, false);
        auto b = ref::random_value(rng, n, 10, false);
        ExecutionTrace tr = record_trace(a, b, *standard_plan());
        MspCensus c = census(*standard_plan(), n, std::max<std::size_t>(2, n / 4), 10);
        LemmaReport rep = verify_lemmas(tr, c, 1000 + n, 8, true);
        INFO("n=" << n);
        REQUIRE(rep.rows.size() >= 16);
        for (const auto& r : rep.rows) {
            INFO(r.lemma << " " << r.params << " required=" << r.required << " achieved=" << r.achieved);
            REQUIRE(r.pass);
        }
    }
}

TEST_CASE("lemma certification passes on one-level split traces") {
    std::mt19937_64 rng(43);
    for (int k : {2, 3}) {
        std::size_t n = k == 2 ? 20 : 24;
        auto a = ref::random_value(rng, n, 10, false);
        auto b = ref::random_value(rng, n, 10, false);
        auto plan = one_level_toom(k);
        ExecutionTrace tr = record_trace(a, b, *plan);
        MspCensus c = census(*plan, n, 4, 10);
        REQUIRE(c.nu1() == static_cast<std::size_t>(2 * k - 1));
        LemmaReport rep = verify_lemmas(tr, c, 2000 + k, 8, true);
        INFO("k=" << k);
        REQUIRE(rep.rows.size() >= 24);
        for (const auto& r : rep.rows) {
            INFO(r.lemma << " " << r.params << " required=" << r.required << " achieved=" << r.achieved);
            REQUIRE(r.pass);
        }
        REQUIRE(rep.failures() == 0);
    }
}

TEST_CASE("lemma reports are deterministic per seed") {
    std::mt19937_64 rng(47);
    auto a = ref::random_value(rng, 10, 10, false);
    auto b = ref::random_value(rng, 10, 10, false);
    ExecutionTrace tr = record_trace(a, b, *standard_plan());
    MspCensus c = census(*standard_plan(), 10, 4, 10);
    LemmaReport r1 = verify_lemmas(tr, c, 7, 6, false);
    LemmaReport r2 = verify_lemmas(tr, c, 7, 6, false);
    REQUIRE(r1.rows.size() == r2.rows.size());
    for (std::size_t i = 0; i < r1.rows.size(); ++i) {
        REQUIRE(r1.rows[i].lemma == r2.rows[i].lemma);
        REQUIRE(r1.rows[i].params == r2.rows[i].params);
        REQUIRE(r1.rows[i].achieved == r2.rows[i].achieved);
    }
    LemmaReport r3 = verify_lemmas(tr, c, 8, 6, false);
    bool any_diff = false;
    for (std::size_t i = 0; i < std::min(r1.rows.size(), r3.rows.size()); ++i)
        if (r1.rows[i].params != r3.rows[i].params) any_diff = true;
    REQUIRE(any_diff); // different seeds explore different subsets
}

TEST_CASE("cross-checking fires on small instances") {
    std::mt19937_64 rng(53);
    auto a = ref::random_value(rng, 6, 10, false);
    auto b = ref::random_value(rng, 6, 10, false);
    ExecutionTrace tr = record_trace(a, b, *standard_plan());
    MspCensus c = census(*standard_plan(), 6, 2, 10);
    LemmaReport rep = verify_lemmas(tr, c, 11, 8, true);
    REQUIRE(rep.failures() == 0);
    REQUIRE(rep.cross_checks() >= 4);
}
