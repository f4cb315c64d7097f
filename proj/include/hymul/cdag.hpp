#pragma once

// Dependency graph built from an execution trace: one vertex per traced
// value, one edge per operand relation. A dominator of a target set T
// with respect to a source set S is a vertex set met by every S-to-T
// path (endpoints count). Its minimum size equals the maximum number of
// vertex-disjoint S-to-T paths and is computed exactly by max flow on
// the vertex-split network; tiny instances can be cross-checked by
// exhaustive subset search.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "hymul/census.hpp"
#include "hymul/maxflow.hpp"
#include "hymul/trace.hpp"

namespace hymul {

struct Cdag {
    std::size_t n = 0;                           // vertex count
    std::vector<OpKind> kind;                     // producing operation per vertex
    std::vector<std::array<NodeId, 2>> preds;     // operand vertices (kNoNode = absent)
    std::vector<std::vector<NodeId>> succs;
    std::vector<NodeId> inputs;                   // all input-digit vertices

    bool is_input(NodeId v) const { return kind[v] == OpKind::InputLoad; }
};

inline Cdag build_cdag(const ExecutionTrace& tr) {
    Cdag g;
    g.n = static_cast<std::size_t>(tr.node_count);
    g.kind.assign(g.n, OpKind::InputLoad);
    g.preds.assign(g.n, {kNoNode, kNoNode});
    g.succs.assign(g.n, {});
    for (const auto& e : tr.events) {
        if (e.result == kNoNode) continue; // shift / store markers carry no value
        g.kind[e.result] = e.kind;
        g.preds[e.result] = {e.a, e.b};
        for (NodeId op : {e.a, e.b})
            if (op >= 0) {
                if (op >= e.result) throw std::logic_error("operand does not precede its result");
                g.succs[op].push_back(e.result);
            }
    }
    g.inputs.reserve(tr.input_ids_a.size() + tr.input_ids_b.size());
    g.inputs.insert(g.inputs.end(), tr.input_ids_a.begin(), tr.input_ids_a.end());
    g.inputs.insert(g.inputs.end(), tr.input_ids_b.begin(), tr.input_ids_b.end());
    return g;
}

// Characteristic vector of the vertices from which some target is
// reachable (the targets themselves included).
inline std::vector<char> reverse_closure(const Cdag& g, const std::vector<NodeId>& targets) {
    std::vector<char> seen(g.n, 0);
    std::vector<NodeId> stack;
    for (NodeId t : targets)
        if (!seen[t]) {
            seen[t] = 1;
            stack.push_back(t);
        }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId p : g.preds[v])
            if (p != kNoNode && !seen[p]) {
                seen[p] = 1;
                stack.push_back(p);
            }
    }
    return seen;
}

// Marked vertex sets of one maximal subproblem: the low-half input
// digits of both operands, the mid-window output digits, and (for
// standard nodes) the central-band elementary products.
struct MspMarks {
    std::size_t sub = 0;       // trace subproblem index
    std::size_t size = 0;      // nominal input size n_i
    bool type1 = false;
    std::vector<NodeId> y_low_inputs;   // low ceil(n_i/2) digits of A_i and B_i
    std::vector<NodeId> z_mid_outputs;  // output digits ceil(n_i/2) .. n_i-1
    std::vector<NodeId> t_products;     // elementary products of the central band
    std::vector<std::pair<std::uint16_t, std::uint16_t>> t_indices; // (j, l) per product
};

inline std::vector<MspMarks> msp_marks(const ExecutionTrace& tr, const MspCensus& census) {
    std::vector<MspMarks> out;
    out.reserve(census.entries.size());
    for (const auto& entry : census.entries) {
        MspMarks m;
        m.sub = entry.plan_node;
        m.size = entry.size;
        m.type1 = entry.type1;
        const SubInfo& sub = tr.subs.at(m.sub);
        const std::size_t half = (m.size + 1) / 2;
        auto take_low = [&](const std::vector<NodeId>& ids) {
            for (std::size_t i = 0; i < std::min(half, ids.size()); ++i)
                if (ids[i] >= 0) m.y_low_inputs.push_back(ids[i]);
        };
        take_low(sub.a_ids);
        take_low(sub.b_ids);
        for (std::size_t i = half; i < std::min(m.size, sub.c_ids.size()); ++i)
            if (sub.c_ids[i] >= 0) m.z_mid_outputs.push_back(sub.c_ids[i]);
        if (m.type1) {
            const std::size_t jmax = (m.size - 1) / 2;
            for (std::size_t e = sub.first_event; e < sub.end_event; ++e) {
                const TraceEvent& ev = tr.events[e];
                if (ev.sub != static_cast<std::int32_t>(m.sub) || ev.kind != OpKind::ElementaryProduct)
                    continue;
                std::size_t j = ev.j, l = ev.l;
                if (j > jmax || l > jmax) continue;
                if (4 * (j + l) < m.size || 4 * (j + l) > 3 * m.size) continue;
                m.t_products.push_back(ev.result);
                m.t_indices.push_back({ev.j, ev.l});
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

struct DominatorResult {
    std::int64_t size = 0;
    std::vector<NodeId> cut; // one minimum dominator witnessing the size
};

inline DominatorResult min_dominator(const Cdag& g, const std::vector<NodeId>& sources,
                                     const std::vector<NodeId>& targets) {
    const std::size_t V = g.n;
    FlowNetwork net(2 * V + 2);
    const std::size_t S = 2 * V, T = 2 * V + 1;
    auto vin = [](NodeId v) { return static_cast<std::size_t>(2 * v); };
    auto vout = [](NodeId v) { return static_cast<std::size_t>(2 * v + 1); };
    for (NodeId v = 0; v < static_cast<NodeId>(V); ++v) {
        net.add_edge(vin(v), vout(v), 1);
        for (NodeId w : g.succs[v]) net.add_edge(vout(v), vin(w), FlowNetwork::kInfCap);
    }
    for (NodeId s : sources) net.add_edge(S, vin(s), FlowNetwork::kInfCap);
    for (NodeId t : targets) net.add_edge(vout(t), T, FlowNetwork::kInfCap);
    DominatorResult res;
    res.size = net.max_flow(S, T);
    std::vector<std::uint8_t> side = net.residual_side(S);
    for (NodeId v = 0; v < static_cast<NodeId>(V); ++v)
        if (side[vin(v)] && !side[vout(v)]) res.cut.push_back(v);
    return res;
}

namespace detail {

// Does removing `blocked` disconnect every sources->targets path?
inline bool separates(const Cdag& g, const std::vector<NodeId>& sources, const std::vector<NodeId>& targets,
                      const std::vector<std::uint8_t>& blocked) {
    std::vector<std::uint8_t> target_set(g.n, 0), seen(g.n, 0);
    for (NodeId t : targets) target_set[t] = 1;
    std::queue<NodeId> q;
    for (NodeId s : sources)
        if (!blocked[s] && !seen[s]) {
            if (target_set[s]) return false;
            seen[s] = 1;
            q.push(s);
        }
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId w : g.succs[u]) {
            if (blocked[w] || seen[w]) continue;
            if (target_set[w]) return false;
            seen[w] = 1;
            q.push(w);
        }
    }
    return true;
}

} // namespace detail

// Exhaustive minimum-dominator search over the vertices lying on some
// sources->targets path. Returns nothing when there are more than
// `max_candidates` such vertices.
inline std::optional<std::int64_t> brute_force_min_dominator(const Cdag& g, const std::vector<NodeId>& sources,
                                                             const std::vector<NodeId>& targets,
                                                             std::size_t max_candidates = 18) {
    std::vector<std::uint8_t> fwd(g.n, 0), bwd(g.n, 0);
    {
        std::queue<NodeId> q;
        for (NodeId s : sources)
            if (!fwd[s]) {
                fwd[s] = 1;
                q.push(s);
            }
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            for (NodeId w : g.succs[u])
                if (!fwd[w]) {
                    fwd[w] = 1;
                    q.push(w);
                }
        }
        for (NodeId t : targets)
            if (!bwd[t]) {
                bwd[t] = 1;
                q.push(t);
            }
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            for (NodeId p : g.preds[u])
                if (p >= 0 && !bwd[p]) {
                    bwd[p] = 1;
                    q.push(p);
                }
        }
    }
    std::vector<NodeId> cand;
    for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v)
        if (fwd[v] && bwd[v]) cand.push_back(v);
    if (cand.size() > max_candidates) return std::nullopt;

    std::vector<std::uint8_t> blocked(g.n, 0);
    if (detail::separates(g, sources, targets, blocked)) return 0;
    for (std::size_t size = 1; size <= cand.size(); ++size) {
        // iterate over all size-subsets of cand via the selection mask
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::fill(blocked.begin(), blocked.end(), 0);
            for (std::size_t i : idx) blocked[cand[i]] = 1;
            if (detail::separates(g, sources, targets, blocked)) return static_cast<std::int64_t>(size);
            // next combination
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == cand.size() - size + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return static_cast<std::int64_t>(cand.size());
}

} // namespace hymul
