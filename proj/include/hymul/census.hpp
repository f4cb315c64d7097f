#pragma once

// Maximal subproblem census. For a threshold t, a plan node of nominal
// size m qualifies when m >= t and either the node is standard (type 1)
// or every generated child has nominal size < t (type 2). Nominal sizes
// follow the chosen size recurrence. Because child sizes never exceed
// 2m/k <= m, qualifying nodes are pairwise non-nested.

#include <cstdint>
#include <vector>

#include "hymul/plan.hpp"

namespace hymul {

struct MspEntry {
    std::int32_t plan_node; // preorder index in the instruction tree
    std::size_t size;       // nominal input size
    std::int32_t depth;
    bool type1;             // true: standard node; false: split node with all children below threshold
};

// Count of pairs (j, l) with 0 <= j,l <= floor((m-1)/2) and
// m/4 <= j+l <= 3m/4: the central band of elementary products of a
// standard subproblem of size m.
inline std::uint64_t product_window_count(std::size_t m) {
    if (m == 0) return 0;
    std::int64_t h = static_cast<std::int64_t>((m - 1) / 2);
    std::uint64_t count = 0;
    for (std::int64_t j = 0; j <= h; ++j) {
        std::int64_t num_lo = static_cast<std::int64_t>(m) - 4 * j; // l >= num_lo / 4 (ceil)
        std::int64_t lmin = num_lo <= 0 ? 0 : (num_lo + 3) / 4;
        std::int64_t num_hi = 3 * static_cast<std::int64_t>(m) - 4 * j; // l <= num_hi / 4 (floor)
        std::int64_t lmax = num_hi < 0 ? -1 : num_hi / 4;
        if (lmax > h) lmax = h;
        if (lmax >= lmin) count += static_cast<std::uint64_t>(lmax - lmin + 1);
    }
    return count;
}

struct MspCensus {
    std::size_t threshold = 0;
    std::vector<MspEntry> entries;
    std::uint64_t sum_sq_type1 = 0;      // sum of n_i^2 over type-1 entries
    std::uint64_t window_count_exact = 0; // enumerated central-band product pairs

    std::size_t nu1() const {
        std::size_t c = 0;
        for (const auto& e : entries)
            if (e.type1) ++c;
        return c;
    }
    std::size_t nu2() const { return entries.size() - nu1(); }
    std::size_t nu() const { return entries.size(); }

    // Quarter-of-squares convention for the product-set cardinality used
    // by the bound evaluators: 4|T| = sum n_i^2.
    double t_card() const { return static_cast<double>(sum_sq_type1) / 4.0; }

    // The enumerated band is smaller than the quarter-of-squares value
    // (about 3/16 n^2 vs 4/16 n^2); this reports whether the enumerated
    // count still reaches nu1 * threshold^2 / 4.
    bool window_reaches_quarter_bound() const {
        return static_cast<double>(window_count_exact) >=
               static_cast<double>(nu1()) * static_cast<double>(threshold) * static_cast<double>(threshold) / 4.0;
    }
};

namespace detail {

inline void census_rec(const InstructionTree& node, std::size_t m, std::size_t threshold,
                       std::uint32_t base, SizeModel model, std::int32_t depth,
                       std::int32_t& preorder, MspCensus& out) {
    std::int32_t idx = preorder++;
    if (node.is_standard()) {
        if (m >= threshold) {
            out.entries.push_back({idx, m, depth, true});
            out.sum_sq_type1 += static_cast<std::uint64_t>(m) * m;
            out.window_count_exact += product_window_count(m);
        }
        return;
    }
    std::vector<std::size_t> cs = child_sizes(m, node.k, node.pts, base, model);
    if (m >= threshold) {
        bool all_below = true;
        for (std::size_t c : cs)
            if (c >= threshold) all_below = false;
        if (all_below) {
            out.entries.push_back({idx, m, depth, false});
            // children are below the threshold; still recurse to keep
            // preorder numbering aligned with the plan walk
        }
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        census_rec(*node.children[i], cs[i], threshold, base, model, depth + 1, preorder, out);
}

} // namespace detail

inline MspCensus census(const InstructionTree& plan, std::size_t n, std::size_t threshold,
                        std::uint32_t base, SizeModel model = SizeModel::Exact) {
    MspCensus out;
    out.threshold = threshold;
    std::int32_t preorder = 0;
    detail::census_rec(plan, n, threshold, base, model, 0, preorder, out);
    return out;
}

// All nominal node sizes of the plan, preorder; useful as the candidate
// thresholds where a census can change.
inline void collect_sizes(const InstructionTree& node, std::size_t m, std::uint32_t base,
                          SizeModel model, std::vector<std::size_t>& out) {
    out.push_back(m);
    if (node.is_standard()) return;
    std::vector<std::size_t> cs = child_sizes(m, node.k, node.pts, base, model);
    for (std::size_t i = 0; i < cs.size(); ++i)
        collect_sizes(*node.children[i], cs[i], base, model, out);
}

} // namespace hymul
