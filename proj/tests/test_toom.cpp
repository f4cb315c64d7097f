#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "hymul/census.hpp"
#include "hymul/plan_json.hpp"
#include "hymul/toom.hpp"
#include "reference.hpp"

using namespace hymul;

namespace {

std::size_t count_kind(const ExecutionTrace& tr, OpKind k) {
    std::size_t n = 0;
    for (const auto& e : tr.events)
        if (e.kind == k) ++n;
    return n;
}

std::vector<std::int64_t> values_of(const std::vector<DigitString>& v) {
    std::vector<std::int64_t> out;
    for (const auto& d : v) out.push_back(to_int64(d));
    return out;
}

} // namespace

TEST_CASE("split 12 into blocks (2, 1)") {
    DigitString a = from_uint64(12, 10);
    auto blocks = split(a, 1, 2);
    REQUIRE(values_of(blocks) == std::vector<std::int64_t>({2, 1}));
    // short operands leave high blocks at canonical zero
    auto blocks3 = split(a, 1, 3);
    REQUIRE(blocks3[2].is_zero());
}

TEST_CASE("evaluate block polynomials at (0, 1, -1)") {
    VandermondeSystem v(2, {0, 1, -1});
    DigitString a = from_uint64(12, 10);
    DigitString b = from_uint64(34, 10);
    REQUIRE(values_of(v.evaluate(split(a, 1, 2))) == std::vector<std::int64_t>({2, 3, 1}));
    REQUIRE(values_of(v.evaluate(split(b, 1, 2))) == std::vector<std::int64_t>({4, 7, 1}));
}

TEST_CASE("interpolate (8, 21, 1) at (0, 1, -1) to coefficients (8, 10, 3)") {
    VandermondeSystem v(2, {0, 1, -1});
    std::vector<DigitString> vals = {from_uint64(8, 10), from_uint64(21, 10), from_uint64(1, 10)};
    REQUIRE(values_of(v.solve(vals)) == std::vector<std::int64_t>({8, 10, 3}));
}

TEST_CASE("recompose (8, 10, 3) with width 1 gives 408") {
    std::vector<DigitString> coeffs = {from_uint64(8, 10), from_uint64(10, 10), from_uint64(3, 10)};
    REQUIRE(to_uint64(recompose(coeffs, 1)) == 408);
}

TEST_CASE("Vandermonde solve inverts evaluate on random integer polynomials") {
    std::mt19937_64 rng(31);
    for (int k = 2; k <= 8; ++k) {
        VandermondeSystem v(k, default_points(k));
        for (int rep = 0; rep < 30; ++rep) {
            // a degree-(2k-2) polynomial, as produced by a child product
            std::vector<DigitString> coeffs;
            for (int j = 0; j < 2 * k - 1; ++j)
                coeffs.push_back(from_int64(static_cast<std::int64_t>(rng() % 2000001) - 1000000, 65536));
            // evaluate a full-degree polynomial: extend the power basis by
            // evaluating in two halves of degree < k and shifting
            std::vector<DigitString> lo(coeffs.begin(), coeffs.begin() + k);
            std::vector<DigitString> hi(coeffs.begin() + k, coeffs.end());
            hi.resize(k, DigitString{{}, +1, 65536, {}});
            auto vlo = v.evaluate(lo);
            auto vhi = v.evaluate(hi);
            std::vector<DigitString> vals(2 * k - 1);
            for (int i = 0; i < 2 * k - 1; ++i) {
                std::int64_t x = v.points()[i];
                std::int64_t xk = 1;
                for (int e = 0; e < k; ++e) xk *= x;
                vals[i] = add_signed(vlo[i], scalar_mul(vhi[i], xk));
            }
            auto solved = v.solve(vals);
            REQUIRE(values_of(solved) == values_of(coeffs));
        }
    }
}

TEST_CASE("single split node: 12 x 34 = 408 with three one-digit child products") {
    auto plan = std::make_unique<InstructionTree>();
    plan->k = 2;
    plan->pts = {0, 1, -1};
    for (int i = 0; i < 3; ++i) plan->children.push_back(standard_plan());
    validate_plan(*plan, 2, 10);

    Tracer t(10);
    DigitString a = from_uint64(12, 10), b = from_uint64(34, 10);
    t.tag_input(a, false);
    t.tag_input(b, true);
    DigitString r = multiply(a, b, *plan, &t);
    REQUIRE(to_uint64(r) == 408);
    REQUIRE(count_kind(t.trace(), OpKind::ElementaryProduct) == 3);
    // the three products live in three distinct child subproblems
    std::set<std::int32_t> subs;
    for (const auto& e : t.trace().events)
        if (e.kind == OpKind::ElementaryProduct) subs.insert(e.sub);
    REQUIRE(subs.size() == 3);
    REQUIRE(t.trace().subs.size() == 4);
}

TEST_CASE("1234 x 5678 under a uniform Toom-2 plan down to n0=1") {
    auto plan = uniform_plan(4, 2, 1, 10);
    validate_plan(*plan, 4, 10);
    DigitString a = from_uint64(1234, 10), b = from_uint64(5678, 10);
    REQUIRE(to_uint64(multiply(a, b, *plan)) == 7006652);
}

TEST_CASE("hybrid multiply agrees with the reference on random plans and inputs") {
    std::mt19937_64 rng(37);
    for (std::uint32_t base : {2u, 10u, 256u, 65536u}) {
        for (int rep = 0; rep < 60; ++rep) {
            std::size_t n = 1 + rng() % 96;
            auto plan = random_plan(n, rng(), {2, 3, 4}, 0.2, base);
            validate_plan(*plan, n, base);
            DigitString a = ref::random_value(rng, 1 + rng() % n, base);
            DigitString b = ref::random_value(rng, 1 + rng() % n, base);
            DigitString r = multiply(a, b, *plan);
            REQUIRE(r.digits == ref::ref_mul(a.digits, b.digits, base));
            REQUIRE(r.sign == +1);
        }
    }
}

TEST_CASE("signed operands multiply with the sign rule") {
    auto plan = uniform_plan(6, 3, 2, 10);
    DigitString a = from_int64(-123456, 10);
    DigitString b = from_int64(654321, 10);
    REQUIRE(to_int64(multiply(a, b, *plan)) == -123456ll * 654321ll);
    REQUIRE(to_int64(multiply(a, negate_copy(b), *plan)) == 123456ll * 654321ll);
    REQUIRE(multiply(a, DigitString{{}, +1, 10, {}}, *plan).is_zero());
}

TEST_CASE("traced hybrid multiply matches untraced") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 25; ++rep) {
        std::uint32_t base = (rep % 2) ? 10u : 65536u;
        std::size_t n = 4 + rng() % 40;
        auto plan = random_plan(n, rng(), {2, 3}, 0.3, base);
        DigitString a = ref::random_value(rng, n, base);
        DigitString b = ref::random_value(rng, n, base);
        Tracer t(base);
        DigitString ta = a, tb = b;
        t.tag_input(ta, false);
        t.tag_input(tb, true);
        DigitString traced = multiply(ta, tb, *plan, &t);
        REQUIRE(same_value(traced, multiply(a, b, *plan)));
        REQUIRE(traced.ids.size() == traced.digits.size());
        // every subproblem present: one per plan node, preorder
        REQUIRE(t.trace().subs.size() == plan->node_count());
    }
}

TEST_CASE("plan JSON round-trip is lossless") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        auto plan = random_plan(1 + rng() % 200, rng(), {2, 3, 4, 5}, 0.3);
        auto j = plan_to_json(*plan);
        auto back = plan_from_json(j);
        REQUIRE(plan_to_json(*back) == j);
        REQUIRE(plan_hash(*back) == plan_hash(*plan));
    }
    auto j = nlohmann::json::parse(R"({"toom":2,"pts":[0,1,-1],"children":[{"std":"schoolbook"},{"std":"schoolbook"}]})");
    REQUIRE_THROWS_AS(plan_from_json(j), PlanError);
}

TEST_CASE("uniform plan shapes: ideal sizing gives the textbook tree") {
    // n=64, k=2, n0=8: depth 3, 27 standard leaves of size 8
    auto plan = uniform_plan(64, 2, 8, 65536, {}, SizeModel::Ideal);
    std::size_t leaves = 0;
    int max_depth = 0;
    auto walk = [&](auto&& self, const InstructionTree& nd, int d) -> void {
        if (nd.is_standard()) {
            ++leaves;
            max_depth = std::max(max_depth, d);
            return;
        }
        REQUIRE(nd.children.size() == 3);
        for (const auto& c : nd.children) self(self, *c, d + 1);
    };
    walk(walk, *plan, 0);
    REQUIRE(leaves == 27);
    REQUIRE(max_depth == 3);
}

TEST_CASE("every split node of a k=3 plan has five children") {
    auto plan = uniform_plan(27, 3, 1, 65536);
    auto walk = [&](auto&& self, const InstructionTree& nd) -> void {
        if (nd.is_standard()) return;
        REQUIRE(nd.k == 3);
        REQUIRE(nd.children.size() == 5);
        for (const auto& c : nd.children) self(self, *c);
    };
    walk(walk, *plan);
    validate_plan(*plan, 27, 65536);
}

TEST_CASE("random_plan is deterministic in the seed and falls back when required") {
    auto p1 = random_plan(300, 99, {2, 3, 4}, 0.3);
    auto p2 = random_plan(300, 99, {2, 3, 4}, 0.3);
    REQUIRE(plan_to_json(*p1) == plan_to_json(*p2));
    auto p3 = random_plan(300, 100, {2, 3, 4}, 0.3);
    REQUIRE(plan_to_json(*p1) != plan_to_json(*p3)); // overwhelmingly likely
    // p_standard = 1 is always a bare standard node
    auto p4 = random_plan(300, 7, {2}, 1.0);
    REQUIRE(p4->is_standard());
    // p_standard = 0 with k=2 splits all the way to the admissibility floor
    auto p5 = random_plan(16, 7, {2}, 0.0, 10);
    REQUIRE(!p5->is_standard());
}

TEST_CASE("plan validation rejects malformed nodes") {
    auto bad = std::make_unique<InstructionTree>();
    bad->k = 2;
    bad->pts = {0, 1, 1};
    for (int i = 0; i < 3; ++i) bad->children.push_back(standard_plan());
    REQUIRE_THROWS_AS(validate_plan(*bad, 8, 10), PlanError);
    // oversized evaluation points blow the 2n/k cap in base 2
    auto big = std::make_unique<InstructionTree>();
    big->k = 2;
    big->pts = {0, 5, -5};
    for (int i = 0; i < 3; ++i) big->children.push_back(standard_plan());
    REQUIRE_THROWS_AS(validate_plan(*big, 4, 2), PlanError);
    REQUIRE_NOTHROW(validate_plan(*big, 64, 65536));
}

TEST_CASE("census identifies maximal subproblems") {
    // single standard node, n=1024, threshold 256: one improper type-1 entry
    auto std_plan = standard_plan();
    MspCensus c1 = census(*std_plan, 1024, 256, 65536);
    REQUIRE(c1.nu1() == 1);
    REQUIRE(c1.nu2() == 0);
    REQUIRE(c1.entries[0].size == 1024);
    REQUIRE(c1.sum_sq_type1 == 1024ull * 1024ull);
    // below the threshold: empty census
    MspCensus c2 = census(*std_plan, 8, 16, 65536);
    REQUIRE(c2.nu() == 0);
    // uniform Toom-2 to n0=1 under ideal sizing, n=64, threshold 16:
    // the nine depth-2 nodes of size 16 qualify as type 2
    auto plan = uniform_plan(64, 2, 1, 65536, {}, SizeModel::Ideal);
    MspCensus c3 = census(*plan, 64, 16, 65536, SizeModel::Ideal);
    REQUIRE(c3.nu1() == 0);
    REQUIRE(c3.nu2() == 9);
    for (const auto& e : c3.entries) {
        REQUIRE(e.size == 16);
        REQUIRE(e.depth == 2);
    }
}

TEST_CASE("census type-1 counts follow the uniform recursion") {
    // n = k^t, n0 = k^u, ideal sizing: nu1(n0) = (2k-1)^(t-u)
    auto p1 = uniform_plan(64, 2, 8, 65536, {}, SizeModel::Ideal);
    REQUIRE(census(*p1, 64, 8, 65536, SizeModel::Ideal).nu1() == 27);
    auto p2 = uniform_plan(81, 3, 3, 65536, {}, SizeModel::Ideal);
    REQUIRE(census(*p2, 81, 3, 65536, SizeModel::Ideal).nu1() == 125);
}

TEST_CASE("census entries are pairwise non-nested and sizes non-increasing") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = 16 + rng() % 300;
        auto plan = random_plan(n, rng(), {2, 3, 4}, 0.25);
        std::vector<std::size_t> sizes;
        collect_sizes(*plan, n, 65536, SizeModel::Exact, sizes);
        std::size_t threshold = 2 + rng() % n;
        MspCensus c = census(*plan, n, threshold, 65536);
        for (const auto& e : c.entries) REQUIRE(e.size >= threshold);
        // map each node to its preorder subtree range [me, last]; census
        // entries must have pairwise disjoint subtrees
        std::vector<std::pair<std::int32_t, std::int32_t>> subtree;
        std::int32_t pre = 0;
        auto walk = [&](auto&& self, const InstructionTree& nd) -> std::pair<std::int32_t, std::int32_t> {
            std::int32_t me = pre++;
            std::int32_t last = me;
            for (const auto& ch : nd.children) last = self(self, *ch).second;
            subtree.push_back({me, last});
            return {me, last};
        };
        walk(walk, *plan);
        auto range_of = [&](std::int32_t node) {
            for (auto& r : subtree)
                if (r.first == node) return r;
            FAIL("node not found");
            return subtree.front();
        };
        for (std::size_t i = 0; i < c.entries.size(); ++i)
            for (std::size_t j = i + 1; j < c.entries.size(); ++j) {
                auto ri = range_of(c.entries[i].plan_node);
                auto rj = range_of(c.entries[j].plan_node);
                bool disjoint = ri.second < rj.first || rj.second < ri.first;
                REQUIRE(disjoint);
            }
    }
}

TEST_CASE("central product band pair counts") {
    REQUIRE(product_window_count(8) == 13);  // vs the quarter convention 16
    REQUIRE(product_window_count(1) == 0);   // j=l=0 misses 1/4 <= j+l
    REQUIRE(product_window_count(4) == 3);
}
