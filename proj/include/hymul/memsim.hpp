#pragma once

// Two-level memory simulation over execution traces.
//
// Slow memory holds one word per trace vertex at a fixed address:
// first the input digits of A and B, then the product digits, then the
// remaining values grouped by subproblem in creation order. The cache
// holds up to M words in block frames of B words; a transfer moves one
// block. Inputs start in slow memory; a value becomes readable once its
// event has executed; dirty values are written back on eviction only if
// they are still needed (a later use, or an output not yet stored).
//
// simulate_io replays a trace in a given topological order under an
// eviction policy (LRU or furthest-next-use on the fixed order) and
// counts block reads and writes. A parsimony audit flags any value that
// is lost while still needed or fetched without being used.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "hymul/errors.hpp"
#include "hymul/toom.hpp"
#include "hymul/trace.hpp"

namespace hymul {

enum class Policy { LRU, IdealOffline };

inline const char* policy_name(Policy p) { return p == Policy::LRU ? "lru" : "ideal"; }

struct MachineConfig {
    std::size_t M = 64; // cache capacity in words
    std::size_t B = 1;  // block size in words
    Policy policy = Policy::LRU;

    void validate() const {
        if (M < 1 || B < 1) throw ConfigError("cache and block sizes must be positive");
        if (B > M) throw ConfigError("block size B must not exceed cache size M");
    }
};

struct IoReport {
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t parsimony_violations = 0;
    std::uint64_t per_kind_reads[kOpKindCount] = {};
    std::uint64_t per_kind_writes[kOpKindCount] = {};

    std::uint64_t total() const { return reads + writes; }
};

using ScheduleOrder = std::vector<std::uint32_t>;

namespace detail {

// Remove values never consumed on any path to an output: the traced
// algorithm keeps every useful digit, but canonical trimming of exact
// cancellations (and of quotient leading zeros) can orphan a few
// vertices, and a parsimonious schedule does not compute those at all.
inline void eliminate_dead_values(ExecutionTrace& tr) {
    const NodeId n = tr.node_count;
    std::vector<std::uint32_t> consumers(n, 0);
    std::vector<std::uint8_t> keep(n, 0), is_input(n, 0);
    for (const auto& e : tr.events) {
        if (e.result == kNoNode) continue;
        if (e.a >= 0) ++consumers[e.a];
        if (e.b >= 0) ++consumers[e.b];
        if (e.kind == OpKind::InputLoad) is_input[e.result] = 1;
    }
    for (NodeId v = 0; v < n; ++v) keep[v] = 1;
    std::vector<std::uint8_t> is_output(n, 0);
    for (NodeId v : tr.output_ids)
        if (v >= 0) is_output[v] = 1;
    // peel values with no remaining consumers
    std::vector<NodeId> worklist;
    std::vector<NodeId> producer_a(n, kNoNode), producer_b(n, kNoNode);
    for (const auto& e : tr.events)
        if (e.result >= 0 && e.kind != OpKind::InputLoad) {
            producer_a[e.result] = e.a;
            producer_b[e.result] = e.b;
        }
    for (NodeId v = 0; v < n; ++v)
        if (consumers[v] == 0 && !is_output[v] && !is_input[v]) worklist.push_back(v);
    while (!worklist.empty()) {
        NodeId v = worklist.back();
        worklist.pop_back();
        if (!keep[v]) continue;
        keep[v] = 0;
        for (NodeId op : {producer_a[v], producer_b[v]})
            if (op >= 0 && --consumers[op] == 0 && !is_output[op] && !is_input[op]) worklist.push_back(op);
    }
    // compact ids in event order
    std::vector<NodeId> remap(n, kNoNode);
    std::vector<TraceEvent> kept_events;
    kept_events.reserve(tr.events.size());
    std::vector<std::size_t> event_pos_map(tr.events.size() + 1, 0);
    NodeId next = 0;
    for (std::size_t i = 0; i < tr.events.size(); ++i) {
        event_pos_map[i] = kept_events.size();
        const TraceEvent& e = tr.events[i];
        if (e.result >= 0 && !keep[e.result]) continue;
        TraceEvent c = e;
        if (c.result >= 0) {
            remap[c.result] = next++;
            c.result = remap[c.result];
        }
        if (c.a >= 0) c.a = remap[c.a];
        if (c.b >= 0) c.b = remap[c.b];
        kept_events.push_back(c);
    }
    event_pos_map[tr.events.size()] = kept_events.size();
    tr.events = std::move(kept_events);
    tr.node_count = next;
    auto remap_vec = [&](std::vector<NodeId>& ids) {
        for (NodeId& v : ids)
            if (v >= 0) v = remap[v];
    };
    remap_vec(tr.input_ids_a);
    remap_vec(tr.input_ids_b);
    remap_vec(tr.output_ids);
    remap_vec(tr.product.ids);
    for (auto& s : tr.subs) {
        remap_vec(s.a_ids);
        remap_vec(s.b_ids);
        remap_vec(s.c_ids);
        s.first_event = event_pos_map[s.first_event];
        s.end_event = event_pos_map[s.end_event];
    }
}

inline void assign_addresses(ExecutionTrace& tr) {
    tr.address.assign(static_cast<std::size_t>(tr.node_count), -1);
    std::int64_t next = 0;
    auto place = [&](NodeId v) {
        if (v >= 0 && tr.address[v] < 0) tr.address[v] = next++;
    };
    for (NodeId v : tr.input_ids_a) place(v);
    for (NodeId v : tr.input_ids_b) place(v);
    for (NodeId v : tr.output_ids) place(v);
    // remaining values: arena per subproblem, creation order inside
    std::vector<std::vector<NodeId>> arena(tr.subs.empty() ? 1 : tr.subs.size());
    for (const auto& e : tr.events) {
        if (e.result < 0 || tr.address[e.result] >= 0) continue;
        std::size_t s = e.sub >= 0 ? static_cast<std::size_t>(e.sub) : 0;
        arena[s].push_back(e.result);
    }
    for (const auto& bucket : arena)
        for (NodeId v : bucket) place(v);
    for (NodeId v = 0; v < tr.node_count; ++v)
        if (tr.address[v] < 0) tr.address[v] = next++; // defensively place stragglers
}

} // namespace detail

// Run a traced multiply, drop dead values, and lay out slow memory.
inline ExecutionTrace record_trace(const DigitString& a, const DigitString& b, const InstructionTree& plan) {
    detail::require_same_base(a, b);
    Tracer t(a.base);
    DigitString ta = a, tb = b;
    t.tag_input(ta, false);
    t.tag_input(tb, true);
    DigitString result = multiply(ta, tb, plan, &t);
    ExecutionTrace& tr = t.trace();
    tr.product = result;
    tr.output_ids.resize(result.size());
    for (std::size_t i = 0; i < result.size(); ++i) {
        tr.output_ids[i] = result.id_at(i);
        t.emit_marker(OpKind::OutputStore, tr.output_ids[i], static_cast<std::int32_t>(i));
    }
    detail::eliminate_dead_values(tr);
    detail::assign_addresses(tr);
    return std::move(tr);
}

inline ScheduleOrder identity_order(const ExecutionTrace& tr) {
    ScheduleOrder o(tr.events.size());
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = static_cast<std::uint32_t>(i);
    return o;
}

// Depth-first execution already keeps each split subtree contiguous; on
// top of that, re-order every standard subproblem into square tiles of
// the elementary-product grid sized to the cache, so operand blocks and
// accumulator heads are reused while resident.
inline ScheduleOrder cache_aware_schedule(const ExecutionTrace& tr, std::size_t M) {
    std::size_t T = M > 9 ? (M - 4) / 5 : 1;
    if (T < 1) T = 1;
    ScheduleOrder order;
    order.reserve(tr.events.size());
    std::unordered_map<std::size_t, std::int32_t> standard_at; // first_event -> sub
    for (std::size_t s = 0; s < tr.subs.size(); ++s)
        if (tr.subs[s].k == 0 && tr.subs[s].end_event > tr.subs[s].first_event)
            standard_at.emplace(tr.subs[s].first_event, static_cast<std::int32_t>(s));

    std::size_t i = 0;
    while (i < tr.events.size()) {
        auto it = standard_at.find(i);
        if (it == standard_at.end()) {
            order.push_back(static_cast<std::uint32_t>(i));
            ++i;
            continue;
        }
        const SubInfo& sub = tr.subs[it->second];
        const std::size_t lo = sub.first_event, hi = sub.end_event;
        // segment 1 (products and accumulation chains) ends at the first
        // carry event; group its events by output position
        std::size_t seg_end = lo;
        while (seg_end < hi && tr.events[seg_end].kind != OpKind::CarryPropagate) ++seg_end;
        const std::size_t la = sub.a_len, lb = sub.b_len;
        if (la == 0 || lb == 0 || la * lb <= 1) {
            for (std::size_t e = lo; e < hi; ++e) order.push_back(static_cast<std::uint32_t>(e));
            i = hi;
            continue;
        }
        const std::size_t npos = la + lb - 1;
        std::vector<std::vector<std::uint32_t>> group(npos);
        for (std::size_t e = lo; e < seg_end; ++e) {
            assert(tr.events[e].pos >= 0 && static_cast<std::size_t>(tr.events[e].pos) < npos);
            group[tr.events[e].pos].push_back(static_cast<std::uint32_t>(e));
        }
        std::vector<std::size_t> ptr(npos, 0);
        auto tiles = [&](std::size_t len) {
            std::vector<std::pair<std::size_t, std::size_t>> ts;
            for (std::size_t t0 = 0; t0 < len; t0 += T) ts.push_back({t0, std::min(len, t0 + T)});
            return ts;
        };
        auto tj = tiles(la), tl = tiles(lb);
        for (const auto& [jlo, jhi] : tj) {
            for (auto itl = tl.rbegin(); itl != tl.rend(); ++itl) { // descending keeps per-position j ascending
                for (std::size_t j = jlo; j < jhi; ++j) {
                    for (std::size_t l = itl->first; l < itl->second; ++l) {
                        std::size_t p = j + l;
                        auto& g = group[p];
                        if (ptr[p] < g.size() && tr.events[g[ptr[p]]].kind == OpKind::ElementaryProduct &&
                            tr.events[g[ptr[p]]].j == j) {
                            order.push_back(g[ptr[p]++]);
                            if (ptr[p] < g.size() && tr.events[g[ptr[p]]].kind == OpKind::Add)
                                order.push_back(g[ptr[p]++]);
                        }
                    }
                }
            }
        }
        for (std::size_t p = 0; p < npos; ++p)
            for (; ptr[p] < group[p].size(); ++ptr[p]) order.push_back(group[p][ptr[p]]); // defensively drain
        for (std::size_t e = seg_end; e < hi; ++e) order.push_back(static_cast<std::uint32_t>(e)); // carry pass
        i = hi;
    }
    assert(order.size() == tr.events.size());
    return order;
}

namespace detail {

struct Frame {
    std::uint64_t last_touch = 0;
};

} // namespace detail

inline IoReport simulate_io(const ExecutionTrace& tr, const MachineConfig& cfg,
                            const ScheduleOrder* order_ptr = nullptr) {
    cfg.validate();
    ScheduleOrder identity;
    const ScheduleOrder& order = order_ptr ? *order_ptr : (identity = identity_order(tr));
    if (order.size() != tr.events.size()) throw ConfigError("schedule order must cover every event exactly once");

    const std::size_t n = static_cast<std::size_t>(tr.node_count);
    const std::size_t capacity = cfg.M / cfg.B;
    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

    auto blk_of = [&](NodeId v) { return static_cast<std::uint64_t>(tr.address[v]) / cfg.B; };
    std::uint64_t max_blk = 0;
    for (NodeId v = 0; v < tr.node_count; ++v) max_blk = std::max(max_blk, blk_of(v));
    std::vector<std::vector<NodeId>> block_words(max_blk + 1);
    for (NodeId v = 0; v < tr.node_count; ++v) block_words[blk_of(v)].push_back(v);

    // per-word use positions under the chosen order
    std::vector<std::vector<std::uint32_t>> uses(n);
    for (std::uint32_t s = 0; s < order.size(); ++s) {
        const TraceEvent& e = tr.events[order[s]];
        if (e.result == kNoNode && e.kind != OpKind::OutputStore) continue;
        if (e.kind == OpKind::OutputStore) continue; // storing is handled by liveness
        if (e.a >= 0) uses[e.a].push_back(s);
        if (e.b >= 0) uses[e.b].push_back(s);
    }
    std::vector<std::uint32_t> use_ptr(n, 0);
    std::vector<std::uint8_t> valid(n, 0), dirty(n, 0), in_slow(n, 0), is_output(n, 0),
        consumed(n, 0), demand_unused(n, 0), computed(n, 0);
    for (NodeId v : tr.input_ids_a) in_slow[v] = 1;
    for (NodeId v : tr.input_ids_b) in_slow[v] = 1;
    for (NodeId v : tr.output_ids)
        if (v >= 0) is_output[v] = 1;

    std::map<std::uint64_t, detail::Frame> frames;
    IoReport rep;
    std::uint64_t touch_seq = 1;

    auto next_use = [&](NodeId v) -> std::uint64_t {
        return use_ptr[v] < uses[v].size() ? uses[v][use_ptr[v]] : kInf;
    };
    auto frame_next_use = [&](std::uint64_t blk) {
        std::uint64_t nu = kInf;
        for (NodeId w : block_words[blk])
            if (valid[w]) nu = std::min(nu, next_use(w));
        return nu;
    };
    auto evict_one = [&](const std::vector<std::uint64_t>& pinned, OpKind cause) {
        std::uint64_t victim = kInf;
        if (cfg.policy == Policy::LRU) {
            std::uint64_t best = kInf;
            for (const auto& [blk, fr] : frames) {
                if (std::find(pinned.begin(), pinned.end(), blk) != pinned.end()) continue;
                if (fr.last_touch < best) {
                    best = fr.last_touch;
                    victim = blk;
                }
            }
        } else {
            std::uint64_t best = 0;
            bool found = false;
            for (const auto& [blk, fr] : frames) {
                if (std::find(pinned.begin(), pinned.end(), blk) != pinned.end()) continue;
                std::uint64_t nu = frame_next_use(blk);
                if (!found || nu > best) {
                    best = nu;
                    victim = blk;
                    found = true;
                }
            }
        }
        if (victim == kInf) throw InfeasibleSchedule("no evictable frame: working set exceeds cache");
        bool write_needed = false;
        for (NodeId w : block_words[victim]) {
            if (!valid[w]) continue;
            bool live = use_ptr[w] < uses[w].size() || (is_output[w] && (!in_slow[w] || dirty[w]));
            if (dirty[w]) {
                if (live) {
                    // written back: the value stays in memory, so evicting it
                    // before its first use is still parsimonious
                    write_needed = true;
                    in_slow[w] = 1;
                    dirty[w] = 0;
                } else if (computed[w] && !consumed[w] && !is_output[w]) {
                    ++rep.parsimony_violations; // dropped entirely without ever being used
                }
            } else if (demand_unused[w]) {
                ++rep.parsimony_violations; // fetched on demand yet never touched
            }
            valid[w] = 0;
            demand_unused[w] = 0;
        }
        if (write_needed) {
            ++rep.writes;
            ++rep.per_kind_writes[static_cast<int>(cause)];
        }
        frames.erase(victim);
    };
    auto ensure_frame = [&](std::uint64_t blk, const std::vector<std::uint64_t>& pinned, OpKind cause) {
        auto it = frames.find(blk);
        if (it != frames.end()) {
            it->second.last_touch = touch_seq++;
            return;
        }
        while (frames.size() >= capacity) evict_one(pinned, cause);
        frames[blk].last_touch = touch_seq++;
    };
    auto fetch_word = [&](NodeId v, const std::vector<std::uint64_t>& pinned, OpKind cause) {
        if (valid[v]) {
            frames[blk_of(v)].last_touch = touch_seq++;
            return;
        }
        if (!in_slow[v])
            throw std::logic_error("operand neither cached nor in slow memory: invalid schedule");
        std::uint64_t blk = blk_of(v);
        ensure_frame(blk, pinned, cause);
        ++rep.reads;
        ++rep.per_kind_reads[static_cast<int>(cause)];
        for (NodeId w : block_words[blk])
            if (in_slow[w] && !valid[w]) {
                valid[w] = 1;
                dirty[w] = 0;
            }
        demand_unused[v] = 1;
    };

    for (std::uint32_t s = 0; s < order.size(); ++s) {
        const TraceEvent& e = tr.events[order[s]];
        if (e.result == kNoNode) continue;              // shift / store markers
        if (e.kind == OpKind::InputLoad) continue;      // inputs already sit in slow memory
        std::vector<std::uint64_t> pinned;
        for (NodeId op : {e.a, e.b})
            if (op >= 0) pinned.push_back(blk_of(op));
        pinned.push_back(blk_of(e.result));
        std::sort(pinned.begin(), pinned.end());
        pinned.erase(std::unique(pinned.begin(), pinned.end()), pinned.end());
        if (pinned.size() > capacity)
            throw InfeasibleSchedule("operation touches " + std::to_string(pinned.size()) +
                                     " blocks but the cache holds only " + std::to_string(capacity));
        for (NodeId op : {e.a, e.b}) {
            if (op < 0) continue;
            fetch_word(op, pinned, e.kind);
            ++use_ptr[op];
            consumed[op] = 1;
            demand_unused[op] = 0;
        }
        ensure_frame(blk_of(e.result), pinned, e.kind);
        valid[e.result] = 1;
        dirty[e.result] = 1;
        computed[e.result] = 1;
    }

    // final flush: store any output not yet in slow memory
    for (const auto& [blk, fr] : frames) {
        bool write_needed = false;
        for (NodeId w : block_words[blk])
            if (valid[w] && is_output[w] && (dirty[w] || !in_slow[w])) {
                write_needed = true;
                in_slow[w] = 1;
                dirty[w] = 0;
            }
        if (write_needed) {
            ++rep.writes;
            ++rep.per_kind_writes[static_cast<int>(OpKind::OutputStore)];
        }
    }
    for (NodeId v : tr.output_ids)
        if (v >= 0 && !in_slow[v]) throw std::logic_error("output word missing from slow memory after flush");
    return rep;
}

} // namespace hymul
