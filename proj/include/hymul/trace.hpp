#pragma once

// Execution tracing. Every digit-level value produced during a multiply
// gets a trace vertex (NodeId); every arithmetic step becomes one event
// with at most two operands. The event list, the per-subproblem tables,
// and the slow-memory address map together drive the I/O simulator and
// the dependency-graph analyses.

#include <cstdint>
#include <string>
#include <vector>

#include "hymul/digit_string.hpp"

namespace hymul {

enum class OpKind : std::uint8_t {
    InputLoad,         // input digit of the top-level operands
    ElementaryProduct, // one digit-by-digit product inside a standard node
    Add,               // one digit-position addition
    Sub,               // one digit-position subtraction
    ScalarMul,         // digit times small integer constant
    ExactDivSmall,     // quotient digit of an exact division by a small constant
    Shift,             // positional shift marker (no value produced)
    CarryPropagate,    // carry/borrow/remainder value crossing positions
    OutputStore,       // marks a final product digit (no value produced)
};

inline const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::InputLoad: return "InputLoad";
        case OpKind::ElementaryProduct: return "ElementaryProduct";
        case OpKind::Add: return "Add";
        case OpKind::Sub: return "Sub";
        case OpKind::ScalarMul: return "ScalarMul";
        case OpKind::ExactDivSmall: return "ExactDivSmall";
        case OpKind::Shift: return "Shift";
        case OpKind::CarryPropagate: return "CarryPropagate";
        case OpKind::OutputStore: return "OutputStore";
    }
    return "?";
}
inline constexpr int kOpKindCount = 9;

struct TraceEvent {
    OpKind kind;
    NodeId result;      // kNoNode for Shift / OutputStore markers
    NodeId a;           // first operand vertex or kNoNode
    NodeId b;           // second operand vertex or kNoNode
    std::int32_t sub;   // owning subproblem index (== plan-tree preorder index)
    std::int32_t pos;   // digit position within the owning operation
    std::int64_t scalar; // multiplier / divisor / shift amount where relevant
    std::uint16_t j, l; // block indices of an elementary product A[j]*B[l]
};

// One entry per plan-tree node, in preorder; multiply() visits every node
// exactly once, so the subproblem index equals the plan preorder index.
struct SubInfo {
    std::int32_t parent = -1;
    std::int32_t depth = 0;
    int k = 0; // 0 for a standard node, else the split factor
    std::vector<NodeId> a_ids, b_ids; // operand digit vertices (LSB first)
    std::vector<NodeId> c_ids;        // result digit vertices (LSB first)
    std::size_t a_len = 0, b_len = 0;
    std::size_t first_event = 0, end_event = 0; // event range of the subtree
};

struct ExecutionTrace {
    std::uint32_t base = kDefaultBase;
    std::vector<TraceEvent> events;
    NodeId node_count = 0;
    std::vector<NodeId> input_ids_a, input_ids_b;
    std::vector<NodeId> output_ids; // kNoNode entries = digits that are statically zero
    std::vector<SubInfo> subs;
    DigitString product;
    // Slow-memory address of each vertex: [A][B][C][intermediates per sub].
    std::vector<std::int64_t> address;

    std::size_t value_event_count() const {
        std::size_t c = 0;
        for (const auto& e : events)
            if (e.result != kNoNode) ++c;
        return c;
    }
};

class Tracer {
public:
    explicit Tracer(std::uint32_t base) { trace_.base = base; }

    ExecutionTrace& trace() { return trace_; }

    std::int32_t push_sub(int k, const DigitString& a, const DigitString& b) {
        SubInfo s;
        s.parent = stack_.empty() ? -1 : stack_.back();
        s.depth = stack_.empty() ? 0 : trace_.subs[stack_.back()].depth + 1;
        s.k = k;
        s.a_ids = a.ids;
        s.b_ids = b.ids;
        s.a_len = a.size();
        s.b_len = b.size();
        s.first_event = trace_.events.size();
        trace_.subs.push_back(std::move(s));
        std::int32_t idx = static_cast<std::int32_t>(trace_.subs.size() - 1);
        stack_.push_back(idx);
        return idx;
    }

    void pop_sub(const DigitString& result) {
        std::int32_t idx = stack_.back();
        trace_.subs[idx].c_ids = result.ids;
        trace_.subs[idx].end_event = trace_.events.size();
        stack_.pop_back();
    }

    std::int32_t current_sub() const { return stack_.empty() ? -1 : stack_.back(); }

    NodeId emit(OpKind kind, NodeId a, NodeId b, std::int32_t pos,
                std::int64_t scalar = 0, std::uint16_t j = 0, std::uint16_t l = 0) {
        NodeId id = trace_.node_count++;
        trace_.events.push_back({kind, id, a, b, current_sub(), pos, scalar, j, l});
        return id;
    }

    void emit_marker(OpKind kind, NodeId a, std::int32_t pos, std::int64_t scalar = 0) {
        trace_.events.push_back({kind, kNoNode, a, kNoNode, current_sub(), pos, scalar, 0, 0});
    }

    // Tag the digits of a top-level operand as input vertices.
    void tag_input(DigitString& v, bool is_b) {
        v.ids.resize(v.digits.size());
        for (std::size_t i = 0; i < v.digits.size(); ++i) {
            v.ids[i] = emit(OpKind::InputLoad, kNoNode, kNoNode, static_cast<std::int32_t>(i));
            (is_b ? trace_.input_ids_b : trace_.input_ids_a).push_back(v.ids[i]);
        }
    }

private:
    ExecutionTrace trace_;
    std::vector<std::int32_t> stack_;
};

} // namespace hymul
