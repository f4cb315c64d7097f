#pragma once

// Instruction trees: per-subproblem choice of a standard algorithm or a
// k-way split with explicit evaluation points and one child tree per
// generated subproblem. Node sizes follow either the engine's exact size
// recurrence (block width plus growth of the evaluated values, the sizes
// a worst-case input would produce) or the idealized ceil(m/k) recurrence
// with no padding.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hymul/digit_string.hpp"
#include "hymul/eval_points.hpp"
#include "hymul/errors.hpp"

namespace hymul {

enum class SizeModel { Exact, Ideal };

struct InstructionTree {
    int k = 0;                          // 0 => standard leaf
    std::string variant = "schoolbook"; // standard-leaf algorithm tag
    std::vector<std::int64_t> pts;
    std::vector<std::unique_ptr<InstructionTree>> children;

    bool is_standard() const { return k == 0; }

    std::unique_ptr<InstructionTree> clone() const {
        auto c = std::make_unique<InstructionTree>();
        c->k = k;
        c->variant = variant;
        c->pts = pts;
        c->children.reserve(children.size());
        for (const auto& ch : children) c->children.push_back(ch->clone());
        return c;
    }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const auto& ch : children) n += ch->node_count();
        return n;
    }
};

using PlanPtr = std::shared_ptr<const InstructionTree>;

namespace detail {

inline std::size_t digit_len_u64(std::uint64_t v, std::uint64_t base) {
    std::size_t n = 0;
    while (v) {
        ++n;
        v /= base;
    }
    return n;
}

inline std::uint64_t pow_u64(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace detail

// Worst-case digit count of sum_{j<b} |pt|^j * (base^w - 1): the size of
// an evaluated value built from b blocks of width w.
inline std::size_t evaluated_size(std::size_t w, std::size_t blocks, std::int64_t pt, std::uint32_t base) {
    if (pt == 0 || blocks <= 1) return w;
    std::uint64_t apt = pt < 0 ? -pt : pt;
    std::uint64_t c = 0, p = 1;
    for (std::size_t j = 0; j < blocks; ++j) {
        if (c > (std::uint64_t(1) << 62) || p > (std::uint64_t(1) << 62))
            throw PlanError("evaluation point power overflows exact scalar range");
        c += p;
        p *= apt;
    }
    std::size_t L = detail::digit_len_u64(c, base);
    bool exact_power = (c == detail::pow_u64(base, L - 1));
    return w + L - (exact_power ? 1 : 0);
}

// Nominal sizes of the 2k-1 subproblems generated at a node of size m.
inline std::vector<std::size_t> child_sizes(std::size_t m, int k, const std::vector<std::int64_t>& pts,
                                            std::uint32_t base, SizeModel model) {
    check_points(k, pts);
    std::size_t w = (m + k - 1) / k;
    if (w == 0) w = 1;
    std::vector<std::size_t> cs(pts.size());
    if (model == SizeModel::Ideal) {
        for (auto& c : cs) c = w;
        return cs;
    }
    std::size_t blocks = (m + w - 1) / w;
    if (blocks == 0) blocks = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) cs[i] = evaluated_size(w, blocks, pts[i], base);
    return cs;
}

// A split choice is admissible for the constructors when the generated
// sizes respect the 2m/k cap and strictly shrink (so recursion ends).
inline bool split_admissible(std::size_t m, int k, const std::vector<std::int64_t>& pts,
                             std::uint32_t base, SizeModel model) {
    if (m < 2) return false;
    std::vector<std::size_t> cs;
    try {
        cs = child_sizes(m, k, pts, base, model);
    } catch (const PlanError&) {
        return false;
    }
    for (std::size_t c : cs) {
        if (static_cast<std::uint64_t>(c) * k > 2 * static_cast<std::uint64_t>(m)) return false;
        if (c >= m) return false;
    }
    return true;
}

// Checks the class rule (child size <= 2m/k) and structural sanity at
// every node reachable from `plan` for top-level size n.
inline void validate_plan(const InstructionTree& plan, std::size_t n, std::uint32_t base,
                          SizeModel model = SizeModel::Exact) {
    if (plan.is_standard()) {
        if (plan.variant != "schoolbook")
            throw PlanError("unknown standard variant: " + plan.variant);
        return;
    }
    check_points(plan.k, plan.pts);
    if (plan.children.size() != static_cast<std::size_t>(2 * plan.k - 1))
        throw PlanError("Toom node must have exactly 2k-1 children");
    std::vector<std::size_t> cs = child_sizes(n, plan.k, plan.pts, base, model);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (static_cast<std::uint64_t>(cs[i]) * plan.k > 2 * static_cast<std::uint64_t>(n))
            throw PlanError("sub-input size " + std::to_string(cs[i]) + " violates the 2n/k cap at size " +
                            std::to_string(n) + " (k=" + std::to_string(plan.k) + ")");
        validate_plan(*plan.children[i], cs[i], base, model);
    }
}

// Uniform tree: split by k while the residual size exceeds n0 and the
// split is admissible, standard below.
inline std::unique_ptr<InstructionTree> uniform_plan(std::size_t n, int k, std::size_t n0,
                                                     std::uint32_t base,
                                                     std::vector<std::int64_t> pts = {},
                                                     SizeModel model = SizeModel::Exact) {
    if (n == 0) throw PlanError("plan size must be positive");
    if (n0 == 0) throw PlanError("threshold n0 must be positive");
    if (pts.empty()) pts = default_points(k);
    check_points(k, pts);
    auto node = std::make_unique<InstructionTree>();
    if (n > n0 && split_admissible(n, k, pts, base, model)) {
        node->k = k;
        node->pts = pts;
        for (std::size_t c : child_sizes(n, k, pts, base, model))
            node->children.push_back(uniform_plan(c, k, n0, base, pts, model));
    }
    return node;
}

inline std::unique_ptr<InstructionTree> standard_plan() {
    return std::make_unique<InstructionTree>();
}

namespace detail {

inline std::unique_ptr<InstructionTree> random_plan_rec(std::size_t m, std::mt19937_64& rng,
                                                        const std::vector<int>& k_choices,
                                                        double p_standard, std::uint32_t base,
                                                        SizeModel model) {
    std::vector<int> usable;
    for (int k : k_choices)
        if (split_admissible(m, k, default_points(k), base, model)) usable.push_back(k);
    auto node = std::make_unique<InstructionTree>();
    double coin = static_cast<double>(rng() >> 11) / static_cast<double>(std::uint64_t(1) << 53);
    if (usable.empty() || coin < p_standard) return node;
    int k = usable[rng() % usable.size()];
    node->k = k;
    node->pts = default_points(k);
    for (std::size_t c : child_sizes(m, k, node->pts, base, model))
        node->children.push_back(random_plan_rec(c, rng, k_choices, p_standard, base, model));
    return node;
}

} // namespace detail

// Seed-deterministic random member of the class: at each node, fall back
// to standard with probability p_standard or when no choice of k is
// admissible, otherwise pick k uniformly among the admissible choices.
inline std::unique_ptr<InstructionTree> random_plan(std::size_t n, std::uint64_t seed,
                                                    std::vector<int> k_choices = {2, 3, 4, 5, 6, 7, 8},
                                                    double p_standard = 0.25,
                                                    std::uint32_t base = kDefaultBase,
                                                    SizeModel model = SizeModel::Exact) {
    if (n == 0) throw PlanError("plan size must be positive");
    if (k_choices.empty()) throw PlanError("k_choices must not be empty");
    for (int k : k_choices)
        if (k < 2 || k > 8) throw PlanError("k_choices must lie in [2, 8]");
    if (p_standard < 0.0 || p_standard > 1.0) throw PlanError("p_standard must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    return detail::random_plan_rec(n, rng, k_choices, p_standard, base, model);
}

} // namespace hymul
