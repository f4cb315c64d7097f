#pragma once

// Certification of the dominator-size inequalities on concrete traced
// graphs. For seeded samples of the marked vertex sets, the exact
// minimum dominator (vertex cut) is computed and compared against the
// inequality each lemma asserts:
//   flow-bound:     |D| >= ceil(|X'| * |Y'| / n)  (X' low input digits,
//                   Y' mid product digits, dominator w.r.t. X')
//   input-connect:  |D| >= |Y| for Y inside an MSP's low input digits
//   output-dom:     |D| >= ceil(|Z|/2) for Z inside the MSPs' mid
//                   output digits, |Z| <= n'/2
//   product-window: |D| >= max(#A-digits, #B-digits) touched by a set
//                   of central-band elementary products, w.r.t. the
//                   MSP's low input digits
// Small instances are re-solved by exhaustive subset search to confirm
// the max-flow value is the true minimum.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hymul/cdag.hpp"

namespace hymul {

struct LemmaRow {
    std::string lemma;
    std::string params;
    std::int64_t required = 0;
    std::int64_t achieved = 0;
    bool pass = false;
    bool cross_checked = false;
};

struct LemmaReport {
    std::vector<LemmaRow> rows;

    std::size_t failures() const {
        std::size_t f = 0;
        for (const auto& r : rows)
            if (!r.pass) ++f;
        return f;
    }
    std::size_t cross_checks() const {
        std::size_t c = 0;
        for (const auto& r : rows)
            if (r.cross_checked) ++c;
        return c;
    }
};

namespace detail {

// Deterministic sample of `want` distinct elements (partial Fisher-Yates).
inline std::vector<NodeId> sample_subset(std::vector<NodeId> pool, std::size_t want, std::mt19937_64& rng) {
    if (want > pool.size()) want = pool.size();
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(want);
    return pool;
}

inline void finish_row(const Cdag& g, const std::vector<NodeId>& sources, const std::vector<NodeId>& targets,
                       LemmaRow& row, bool cross_check) {
    DominatorResult dom = min_dominator(g, sources, targets);
    row.achieved = dom.size;
    row.pass = row.achieved >= row.required;
    if (cross_check) {
        if (auto exact = brute_force_min_dominator(g, sources, targets)) {
            row.cross_checked = true;
            if (*exact != row.achieved) {
                row.pass = false;
                row.params += " cut-mismatch-exhaustive=" + std::to_string(*exact);
            }
        }
    }
}

} // namespace detail

inline LemmaReport verify_lemmas(const ExecutionTrace& tr, const MspCensus& census, std::uint64_t seed,
                                 std::size_t per_lemma = 12, bool cross_check = true) {
    LemmaReport report;
    Cdag g = build_cdag(tr);
    std::vector<MspMarks> marks = msp_marks(tr, census);
    std::mt19937_64 rng(seed);
    const std::size_t n_top = std::max(tr.input_ids_a.size(), tr.input_ids_b.size());
    const std::size_t half = n_top / 2;

    auto pick_size = [&](std::size_t limit, std::size_t i) -> std::size_t {
        if (limit == 0) return 0;
        switch (i % 4) { // sweep small sizes plus two mid-scale fractions
            case 0: return 1;
            case 1: return std::min<std::size_t>(2, limit);
            case 2: return (limit + 3) / 4;
            default: return (limit + 1) / 2;
        }
    };

    // flow-bound: X' from one operand's low digits, Y' from the product's mid window
    {
        std::vector<NodeId> y_pool;
        for (std::size_t i = half; i < std::min(2 * half, tr.output_ids.size()); ++i)
            if (tr.output_ids[i] >= 0) y_pool.push_back(tr.output_ids[i]);
        for (std::size_t i = 0; i < per_lemma; ++i) {
            const auto& ops = (i % 2 == 0) ? tr.input_ids_a : tr.input_ids_b;
            std::vector<NodeId> x_pool(ops.begin(), ops.begin() + std::min(half, ops.size()));
            if (x_pool.empty() || y_pool.empty()) break;
            auto ys = detail::sample_subset(y_pool, pick_size(y_pool.size(), i / 2 + 1), rng);
            // The trace realizes one execution, and a value-degenerate digit
            // (say, a zero at the top of a split block, dropped when the
            // block is canonicalized) has no realized route into the window;
            // the flow instance is drawn from digits the execution actually
            // sends there.
            std::vector<char> routed = reverse_closure(g, ys);
            std::erase_if(x_pool, [&](NodeId v) { return !routed[v]; });
            if (x_pool.empty()) continue;
            auto xs = detail::sample_subset(x_pool, pick_size(x_pool.size(), i), rng);
            LemmaRow row;
            row.lemma = "flow-bound";
            std::ostringstream p;
            p << "n=" << n_top << " |X'|=" << xs.size() << " |Y'|=" << ys.size() << " side="
              << (i % 2 == 0 ? "A" : "B");
            row.params = p.str();
            row.required = static_cast<std::int64_t>(
                (xs.size() * ys.size() + n_top - 1) / n_top);
            detail::finish_row(g, xs, ys, row, cross_check);
            report.rows.push_back(std::move(row));
        }
    }

    // input-connect: Y inside one MSP's low input digits, dominated w.r.t. all inputs
    if (!marks.empty()) {
        for (std::size_t i = 0; i < per_lemma; ++i) {
            const MspMarks& m = marks[i % marks.size()];
            if (m.y_low_inputs.empty()) continue;
            auto ys = detail::sample_subset(m.y_low_inputs, pick_size(m.y_low_inputs.size(), i), rng);
            LemmaRow row;
            row.lemma = "input-connect";
            std::ostringstream p;
            p << "msp=" << m.sub << " n_i=" << m.size << " |Y|=" << ys.size();
            row.params = p.str();
            row.required = static_cast<std::int64_t>(ys.size());
            detail::finish_row(g, g.inputs, ys, row, cross_check);
            report.rows.push_back(std::move(row));
        }
    }

    // output-dom: Z across all MSPs' mid output digits, |Z| <= n'/2
    if (!marks.empty()) {
        std::vector<NodeId> z_pool;
        for (const auto& m : marks)
            z_pool.insert(z_pool.end(), m.z_mid_outputs.begin(), m.z_mid_outputs.end());
        const std::size_t zcap = census.threshold / 2;
        for (std::size_t i = 0; i < per_lemma && !z_pool.empty() && zcap > 0; ++i) {
            auto zs = detail::sample_subset(z_pool, std::min(pick_size(z_pool.size(), i), zcap), rng);
            LemmaRow row;
            row.lemma = "output-dom";
            std::ostringstream p;
            p << "n'=" << census.threshold << " |Z|=" << zs.size();
            row.params = p.str();
            row.required = static_cast<std::int64_t>((zs.size() + 1) / 2);
            detail::finish_row(g, g.inputs, zs, row, cross_check);
            report.rows.push_back(std::move(row));
        }
    }

    // product-window: central-band products of a Type 1 MSP, w.r.t. its low inputs
    {
        std::vector<const MspMarks*> t1;
        for (const auto& m : marks)
            if (m.type1 && !m.t_products.empty()) t1.push_back(&m);
        for (std::size_t i = 0; i < per_lemma && !t1.empty(); ++i) {
            const MspMarks& m = *t1[i % t1.size()];
            std::vector<NodeId> pidx(m.t_products.size());
            for (std::size_t j = 0; j < pidx.size(); ++j) pidx[j] = static_cast<NodeId>(j);
            auto chosen = detail::sample_subset(pidx, pick_size(pidx.size(), i), rng);
            std::vector<NodeId> ts;
            std::vector<std::uint16_t> js, ls;
            for (NodeId c : chosen) {
                ts.push_back(m.t_products[c]);
                js.push_back(m.t_indices[c].first);
                ls.push_back(m.t_indices[c].second);
            }
            std::sort(js.begin(), js.end());
            js.erase(std::unique(js.begin(), js.end()), js.end());
            std::sort(ls.begin(), ls.end());
            ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
            LemmaRow row;
            row.lemma = "product-window";
            std::ostringstream p;
            p << "msp=" << m.sub << " n_i=" << m.size << " |T'|=" << ts.size() << " jA=" << js.size()
              << " lB=" << ls.size();
            row.params = p.str();
            row.required = static_cast<std::int64_t>(std::max(js.size(), ls.size()));
            detail::finish_row(g, m.y_low_inputs, ts, row, cross_check);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace hymul
