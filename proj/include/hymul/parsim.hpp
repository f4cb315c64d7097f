#pragma once

// Distributed-memory execution simulator. P processors hold the input
// digits (no replication); a placement strategy maps the plan's work onto
// them; every inter-processor value transfer is logged and packed into
// messages of at most B_m words. The simulation is a deterministic
// single-threaded event loop: identical inputs give identical reports.
//
// Strategies:
//   * owner-computes-blocks: for a standard (single quadratic pass) plan,
//     the output positions are cut into P contiguous chunks; each processor
//     fetches the input digits its columns touch, computes the column sums
//     locally, and the running carry accumulator is handed to the next
//     chunk owner as one word per boundary.
//   * subtree-per-processor: for splitting plans, the tree is expanded one
//     whole level at a time until it has at least P subproblems; those units
//     are dealt round-robin, their operands shipped out from processor 0
//     (which gathers the raw inputs and runs all evaluation/interpolation
//     arithmetic) and their results shipped back.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hymul/digit_ops.hpp"
#include "hymul/errors.hpp"
#include "hymul/plan.hpp"
#include "hymul/toom.hpp"
#include "hymul/trace.hpp"
#include "hymul/vandermonde.hpp"

namespace hymul {

enum class Strategy { OwnerComputesBlocks, SubtreePerProcessor };

inline const char* strategy_name(Strategy s) {
    return s == Strategy::OwnerComputesBlocks ? "owner-computes-blocks" : "subtree-per-processor";
}

inline std::optional<Strategy> strategy_from_name(std::string_view name) {
    if (name == "owner-computes-blocks") return Strategy::OwnerComputesBlocks;
    if (name == "subtree-per-processor") return Strategy::SubtreePerProcessor;
    return std::nullopt;
}

// Where each input digit lives at the start. Digit positions [0, n) of each
// operand are owned by exactly one processor.
struct ParallelLayout {
    std::uint64_t P = 1;
    std::uint64_t B_m = 1;
    std::size_t n = 0;
    std::vector<std::uint32_t> owner_a; // position -> processor
    std::vector<std::uint32_t> owner_b;

    void validate() const {
        if (P == 0) throw ConfigError("processor count P must be at least 1");
        if (B_m == 0) throw ConfigError("message size B_m must be at least 1");
        if (owner_a.size() != n || owner_b.size() != n)
            throw ConfigError("input layout must assign every digit position");
        for (std::uint32_t p : owner_a)
            if (p >= P) throw ConfigError("input layout names a processor >= P");
        for (std::uint32_t p : owner_b)
            if (p >= P) throw ConfigError("input layout names a processor >= P");
    }

    // P times the largest per-operand share: max over processors and over
    // the two operands of (digits held) * P / n.
    double alpha() const {
        if (n == 0) return 1.0;
        std::vector<std::size_t> ha(P, 0), hb(P, 0);
        for (std::uint32_t p : owner_a) ++ha[p];
        for (std::uint32_t p : owner_b) ++hb[p];
        std::size_t m = std::max(*std::max_element(ha.begin(), ha.end()),
                                 *std::max_element(hb.begin(), hb.end()));
        return static_cast<double>(m) * static_cast<double>(P) / static_cast<double>(n);
    }
};

// Round-robin digit assignment: digit i of either operand goes to processor
// i mod P, relabeled by a seeded shuffle of the processor ids (seed 0 keeps
// the identity labeling). The per-processor shares, and hence alpha, do not
// depend on the seed.
inline ParallelLayout balanced_input_layout(std::size_t n, std::uint64_t P,
                                            std::uint64_t seed = 0, std::uint64_t B_m = 1) {
    if (P == 0) throw ConfigError("processor count P must be at least 1");
    ParallelLayout lay;
    lay.P = P;
    lay.B_m = B_m;
    lay.n = n;
    std::vector<std::uint32_t> label(P);
    for (std::uint64_t p = 0; p < P; ++p) label[p] = static_cast<std::uint32_t>(p);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = P; i > 1; --i)
            std::swap(label[i - 1], label[rng() % i]);
    }
    lay.owner_a.resize(n);
    lay.owner_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lay.owner_a[i] = label[i % P];
        lay.owner_b[i] = label[i % P];
    }
    lay.validate();
    return lay;
}

// Communication summary of one simulated run.
struct BandwidthReport {
    std::vector<std::uint64_t> sent;     // words, per processor
    std::vector<std::uint64_t> received; // words, per processor
    std::vector<std::uint64_t> products; // elementary products, per processor
    std::uint64_t max_words = 0;    // max over processors of sent + received
    std::uint64_t max_messages = 0; // max over processors, messages of <= B_m words
    double beta_measured = 1.0;     // P * min(products) / total(products)

    std::uint64_t total_sent() const {
        std::uint64_t s = 0;
        for (std::uint64_t v : sent) s += v;
        return s;
    }
    std::uint64_t total_received() const {
        std::uint64_t s = 0;
        for (std::uint64_t v : received) s += v;
        return s;
    }
    std::uint64_t total_products() const {
        std::uint64_t s = 0;
        for (std::uint64_t v : products) s += v;
        return s;
    }
};

struct ParallelResult {
    DigitString product;
    BandwidthReport report;
};

namespace detail {

// Word-transfer ledger; messages are counted per ordered processor pair as
// ceil(words / B_m).
struct CommLog {
    std::uint64_t P;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> pair_words;
    std::vector<std::uint64_t> sent, received;

    explicit CommLog(std::uint64_t p) : P(p), sent(p, 0), received(p, 0) {}

    void transfer(std::uint32_t src, std::uint32_t dst, std::uint64_t words) {
        if (src == dst || words == 0) return;
        pair_words[{src, dst}] += words;
        sent[src] += words;
        received[dst] += words;
    }

    void finalize(BandwidthReport& r, std::uint64_t B_m) const {
        r.sent = sent;
        r.received = received;
        r.max_words = 0;
        for (std::uint64_t p = 0; p < P; ++p)
            r.max_words = std::max(r.max_words, sent[p] + received[p]);
        std::vector<std::uint64_t> msg(P, 0);
        for (const auto& [pair, words] : pair_words) {
            std::uint64_t m = (words + B_m - 1) / B_m;
            msg[pair.first] += m;
            msg[pair.second] += m;
        }
        r.max_messages = 0;
        for (std::uint64_t p = 0; p < P; ++p)
            r.max_messages = std::max(r.max_messages, msg[p]);
    }
};

inline void finish_beta(BandwidthReport& r, std::uint64_t P) {
    std::uint64_t total = r.total_products();
    if (total == 0) {
        r.beta_measured = 1.0;
        return;
    }
    std::uint64_t mn = *std::min_element(r.products.begin(), r.products.end());
    r.beta_measured = static_cast<double>(P) * static_cast<double>(mn) /
                      static_cast<double>(total);
}

// Output columns [0, la+lb-1) cut into P contiguous chunks; processor p
// fetches the digits its columns need, sums locally, and passes the carry
// accumulator across each chunk boundary as one word.
inline ParallelResult run_owner_computes(const DigitString& a, const DigitString& b,
                                         const ParallelLayout& lay) {
    const std::uint64_t P = lay.P;
    ParallelResult out;
    out.report.products.assign(P, 0);
    CommLog comm(P);

    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 || lb == 0) {
        out.product.base = a.base;
        comm.finalize(out.report, lay.B_m);
        finish_beta(out.report, P);
        return out;
    }

    const std::size_t npos = la + lb - 1;
    const std::size_t width = (npos + P - 1) / P;
    auto chunk_lo = [&](std::uint64_t p) { return std::min(npos, p * width); };
    auto chunk_hi = [&](std::uint64_t p) { return std::min(npos, (p + 1) * width); };

    // Input fetches: one word per digit a processor's columns touch but its
    // local memory does not hold.
    for (std::uint64_t p = 0; p < P; ++p) {
        std::size_t lo = chunk_lo(p), hi = chunk_hi(p);
        if (lo >= hi) continue;
        std::size_t jlo = lo >= lb ? lo - (lb - 1) : 0;
        std::size_t jhi = std::min(la - 1, hi - 1);
        for (std::size_t j = jlo; j <= jhi; ++j)
            if (lay.owner_a[j] != p) comm.transfer(lay.owner_a[j], static_cast<std::uint32_t>(p), 1);
        std::size_t llo = lo >= la ? lo - (la - 1) : 0;
        std::size_t lhi = std::min(lb - 1, hi - 1);
        for (std::size_t l = llo; l <= lhi; ++l)
            if (lay.owner_b[l] != p) comm.transfer(lay.owner_b[l], static_cast<std::uint32_t>(p), 1);
    }

    // Column sums of digit magnitudes; per-column product counts accrue to
    // the chunk owner.
    std::vector<std::uint64_t> col(npos, 0);
    for (std::size_t s = 0; s < npos; ++s) {
        std::size_t jlo = s >= lb ? s - (lb - 1) : 0;
        std::size_t jhi = std::min(la - 1, s);
        for (std::size_t j = jlo; j <= jhi; ++j)
            col[s] += static_cast<std::uint64_t>(a.digits[j]) * b.digits[s - j];
        out.report.products[s / width] += jhi - jlo + 1;
    }

    // Ripple pass: the accumulator crosses every boundary between two
    // non-empty chunks as a single word, whatever its value.
    std::uint64_t acc = 0;
    out.product.base = a.base;
    out.product.digits.reserve(npos + 2);
    for (std::size_t s = 0; s < npos; ++s) {
        acc += col[s];
        out.product.digits.push_back(static_cast<std::uint32_t>(acc % a.base));
        acc /= a.base;
        if (s + 1 < npos && (s + 1) % width == 0)
            comm.transfer(static_cast<std::uint32_t>(s / width),
                          static_cast<std::uint32_t>((s + 1) / width), 1);
    }
    while (acc != 0) {
        out.product.digits.push_back(static_cast<std::uint32_t>(acc % a.base));
        acc /= a.base;
    }
    out.product.sign = a.sign * b.sign;
    normalize(out.product);

    comm.finalize(out.report, lay.B_m);
    finish_beta(out.report, P);
    return out;
}

// Expand the plan one whole level at a time (standard nodes carry forward)
// until the level holds at least P subproblems.
inline std::vector<const InstructionTree*> subtree_frontier(const InstructionTree& plan,
                                                            std::uint64_t P) {
    std::vector<const InstructionTree*> level{&plan};
    while (level.size() < P) {
        std::vector<const InstructionTree*> next;
        bool grew = false;
        for (const InstructionTree* node : level) {
            if (node->is_standard()) {
                next.push_back(node);
            } else {
                for (const auto& c : node->children) next.push_back(c.get());
                grew = true;
            }
        }
        if (!grew)
            throw StrategyError("subtree-per-processor cannot expand the plan to " +
                                std::to_string(P) + " work units");
        level = std::move(next);
    }
    return level;
}

struct SubtreeContext {
    const ParallelLayout* lay;
    std::unordered_set<const InstructionTree*> frontier;
    CommLog* comm;
    std::vector<std::uint64_t>* products;
    std::uint64_t next_unit = 0;
};

inline std::uint64_t count_elementary_products(const DigitString& a, const DigitString& b,
                                               const InstructionTree& node) {
    Tracer t(a.base);
    DigitString ta = a, tb = b;
    t.tag_input(ta, false);
    t.tag_input(tb, true);
    multiply(ta, tb, node, &t);
    std::uint64_t c = 0;
    for (const auto& ev : t.trace().events)
        if (ev.kind == OpKind::ElementaryProduct) ++c;
    return c;
}

// Mirrors the sequential multiply walk; at frontier nodes the subproblem is
// shipped to its round-robin processor and the result shipped back, all
// other arithmetic stays on processor 0.
inline DigitString subtree_rec(const DigitString& a, const DigitString& b,
                               const InstructionTree& node, SubtreeContext& ctx) {
    if (ctx.frontier.count(&node)) {
        std::uint32_t p = static_cast<std::uint32_t>(ctx.next_unit++ % ctx.lay->P);
        if (p != 0) ctx.comm->transfer(0, p, a.size() + b.size());
        (*ctx.products)[p] += count_elementary_products(a, b, node);
        DigitString r = multiply(a, b, node);
        if (p != 0) ctx.comm->transfer(p, 0, r.size());
        return r;
    }
    const int k = node.k;
    std::size_t m = std::max(a.size(), b.size());
    if (m == 0) m = 1;
    std::size_t w = (m + k - 1) / k;
    if (w == 0) w = 1;
    auto vsys = vandermonde_for(k, node.pts);
    std::vector<DigitString> pa = vsys->evaluate(split(a, w, k));
    std::vector<DigitString> pb = vsys->evaluate(split(b, w, k));
    if (a.sign < 0)
        for (auto& v : pa) v = negate_copy(v);
    if (b.sign < 0)
        for (auto& v : pb) v = negate_copy(v);
    std::vector<DigitString> prods(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
        prods[i] = subtree_rec(pa[i], pb[i], *node.children[i], ctx);
    std::vector<DigitString> coeffs = vsys->solve(prods);
    return recompose(coeffs, w);
}

inline ParallelResult run_subtree(const DigitString& a, const DigitString& b,
                                  const InstructionTree& plan, const ParallelLayout& lay) {
    const std::uint64_t P = lay.P;
    ParallelResult out;
    out.report.products.assign(P, 0);
    CommLog comm(P);

    // Processor 0 gathers the raw input digits it does not already hold.
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lay.owner_a[i] != 0) comm.transfer(lay.owner_a[i], 0, 1);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (lay.owner_b[i] != 0) comm.transfer(lay.owner_b[i], 0, 1);

    SubtreeContext ctx;
    ctx.lay = &lay;
    auto level = subtree_frontier(plan, P);
    ctx.frontier.insert(level.begin(), level.end());
    ctx.comm = &comm;
    ctx.products = &out.report.products;

    out.product = subtree_rec(a, b, plan, ctx);
    out.product.ids.clear();

    comm.finalize(out.report, lay.B_m);
    finish_beta(out.report, P);
    return out;
}

} // namespace detail

inline ParallelResult run_parallel(const DigitString& a, const DigitString& b,
                                   const InstructionTree& plan, const ParallelLayout& lay,
                                   Strategy strategy) {
    detail::require_same_base(a, b);
    lay.validate();
    if (a.size() > lay.n || b.size() > lay.n)
        throw ConfigError("input layout covers fewer digit positions than the operands");

    if (strategy == Strategy::OwnerComputesBlocks) {
        if (!plan.is_standard())
            throw StrategyError("owner-computes-blocks places only standard plans");
        return detail::run_owner_computes(a, b, lay);
    }
    return detail::run_subtree(a, b, plan, lay);
}

} // namespace hymul
