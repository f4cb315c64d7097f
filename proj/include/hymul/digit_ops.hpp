#pragma once

// Digit-level arithmetic with optional tracing. All routines are exact,
// keep results canonical (no leading zeros, zero => empty/+1), and, when
// given a Tracer, emit one event per digit position touched plus carry /
// borrow / remainder events, with fan-in at most two per produced value.
//
// Vertex conventions: a digit position whose value is unchanged reuses the
// operand's vertex (no event); when a position's accumulated value reaches
// base or beyond, the low digit keeps the accumulating vertex and the
// overflow becomes a fresh CarryPropagate vertex.

#include <cassert>
#include <cstdint>
#include <vector>

#include "hymul/digit_string.hpp"
#include "hymul/errors.hpp"
#include "hymul/trace.hpp"

namespace hymul {

namespace detail {

inline void require_same_base(const DigitString& a, const DigitString& b) {
    if (a.base != b.base)
        throw ConfigError("operands with mismatched bases: " + std::to_string(a.base) +
                          " vs " + std::to_string(b.base));
}

inline void require_tracked(const Tracer* t, const DigitString& v) {
    if (t && !v.digits.empty() && v.ids.size() != v.digits.size())
        throw std::logic_error("traced operand without vertex ids");
}

struct Cell {
    std::uint64_t val = 0;
    NodeId id = kNoNode;
};

// |larger| + |smaller| digitwise.
inline DigitString add_magnitude(const DigitString& a, const DigitString& b, Tracer* t) {
    DigitString r;
    r.base = a.base;
    const std::uint64_t s = a.base;
    const std::size_t n = std::max(a.size(), b.size());
    r.digits.reserve(n + 1);
    if (t) r.ids.reserve(n + 1);
    std::uint64_t carry = 0;
    NodeId carry_id = kNoNode;
    for (std::size_t l = 0; l < n; ++l) {
        std::uint64_t av = l < a.size() ? a.digits[l] : 0;
        std::uint64_t bv = l < b.size() ? b.digits[l] : 0;
        NodeId aid = l < a.size() ? a.id_at(l) : kNoNode;
        NodeId bid = l < b.size() ? b.id_at(l) : kNoNode;
        std::uint64_t uval = av + bv;
        NodeId uid;
        if (aid != kNoNode && bid != kNoNode)
            uid = t->emit(OpKind::Add, aid, bid, static_cast<std::int32_t>(l));
        else
            uid = aid != kNoNode ? aid : bid;
        std::uint64_t tval = uval + carry;
        NodeId tid;
        if (uid != kNoNode && carry_id != kNoNode)
            tid = t->emit(OpKind::Add, uid, carry_id, static_cast<std::int32_t>(l));
        else
            tid = uid != kNoNode ? uid : carry_id;
        r.digits.push_back(static_cast<std::uint32_t>(tval % s));
        if (t) r.ids.push_back(tid);
        carry = tval / s;
        if (carry) {
            assert(tid != kNoNode || !t);
            carry_id = t ? t->emit(OpKind::CarryPropagate, tid, kNoNode, static_cast<std::int32_t>(l)) : kNoNode;
        } else {
            carry_id = kNoNode;
        }
    }
    if (carry) {
        r.digits.push_back(static_cast<std::uint32_t>(carry));
        if (t) r.ids.push_back(carry_id);
    }
    normalize(r);
    return r;
}

// |a| - |b| digitwise; requires |a| >= |b|.
inline DigitString sub_magnitude(const DigitString& a, const DigitString& b, Tracer* t) {
    DigitString r;
    r.base = a.base;
    const std::int64_t s = a.base;
    r.digits.reserve(a.size());
    if (t) r.ids.reserve(a.size());
    std::int64_t borrow = 0;
    NodeId borrow_id = kNoNode;
    for (std::size_t l = 0; l < a.size(); ++l) {
        std::int64_t av = a.digits[l];
        std::int64_t bv = l < b.size() ? b.digits[l] : 0;
        NodeId aid = a.id_at(l);
        NodeId bid = l < b.size() ? b.id_at(l) : kNoNode;
        std::int64_t tval = av - bv - borrow;
        std::int64_t new_borrow = 0;
        if (tval < 0) {
            tval += s;
            new_borrow = 1;
        }
        NodeId tid;
        if (t) {
            bool touched = (bid != kNoNode) || (borrow_id != kNoNode);
            if (!touched) {
                tid = aid; // value unchanged, reuse
            } else {
                NodeId first = aid != kNoNode ? aid : (bid != kNoNode ? bid : borrow_id);
                NodeId second = kNoNode;
                if (first == aid) second = bid != kNoNode ? bid : borrow_id;
                tid = t->emit(OpKind::Sub, first, second, static_cast<std::int32_t>(l));
                if (bid != kNoNode && borrow_id != kNoNode && aid != kNoNode) {
                    // three contributors: fold the borrow in a second step
                    tid = t->emit(OpKind::Sub, tid, borrow_id, static_cast<std::int32_t>(l));
                }
            }
        } else {
            tid = kNoNode;
        }
        r.digits.push_back(static_cast<std::uint32_t>(tval));
        if (t) r.ids.push_back(tid);
        borrow = new_borrow;
        if (borrow) {
            borrow_id = t ? t->emit(OpKind::CarryPropagate, tid, kNoNode, static_cast<std::int32_t>(l)) : kNoNode;
        } else {
            borrow_id = kNoNode;
        }
    }
    assert(borrow == 0 && "sub_magnitude requires |a| >= |b|");
    normalize(r);
    return r;
}

} // namespace detail

inline DigitString negate_copy(DigitString v) {
    if (!v.is_zero()) v.sign = -v.sign;
    return v;
}

// Signed addition a + b.
inline DigitString add_signed(const DigitString& a, const DigitString& b, Tracer* t = nullptr) {
    detail::require_same_base(a, b);
    detail::require_tracked(t, a);
    detail::require_tracked(t, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.sign == b.sign) {
        DigitString r = detail::add_magnitude(a, b, t);
        r.sign = a.sign;
        normalize(r);
        return r;
    }
    int cmp = compare_magnitude(a, b);
    if (cmp == 0) {
        DigitString r;
        r.base = a.base;
        return r;
    }
    const DigitString& big = cmp > 0 ? a : b;
    const DigitString& small = cmp > 0 ? b : a;
    DigitString r = detail::sub_magnitude(big, small, t);
    r.sign = big.sign;
    normalize(r);
    return r;
}

inline DigitString sub_signed(const DigitString& a, const DigitString& b, Tracer* t = nullptr) {
    return add_signed(a, negate_copy(b), t);
}

// a * c for a small signed scalar. Multiplications by 0 and +-1 are
// resolved positionally without events.
inline DigitString scalar_mul(const DigitString& a, std::int64_t c, Tracer* t = nullptr) {
    detail::require_tracked(t, a);
    DigitString r;
    r.base = a.base;
    if (c == 0 || a.is_zero()) return r;
    std::uint64_t mag = c < 0 ? -static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    int sign = (c < 0) ? -a.sign : a.sign;
    if (mag == 1) {
        r = a;
        r.sign = sign;
        return r;
    }
    const std::uint64_t s = a.base;
    if (mag > std::numeric_limits<std::uint64_t>::max() / s)
        throw std::logic_error("scalar too large for exact digit arithmetic");
    std::uint64_t carry = 0;
    NodeId carry_id = kNoNode;
    for (std::size_t l = 0; l < a.size(); ++l) {
        std::uint64_t mval = a.digits[l] * mag;
        NodeId mid = t ? t->emit(OpKind::ScalarMul, a.id_at(l), kNoNode,
                                 static_cast<std::int32_t>(l), static_cast<std::int64_t>(mag))
                       : kNoNode;
        std::uint64_t tval = mval + carry;
        NodeId tid = mid;
        if (t && carry_id != kNoNode)
            tid = t->emit(OpKind::Add, mid, carry_id, static_cast<std::int32_t>(l));
        r.digits.push_back(static_cast<std::uint32_t>(tval % s));
        if (t) r.ids.push_back(tid);
        carry = tval / s;
        if (carry)
            carry_id = t ? t->emit(OpKind::CarryPropagate, tid, kNoNode, static_cast<std::int32_t>(l)) : kNoNode;
        else
            carry_id = kNoNode;
    }
    std::int32_t l = static_cast<std::int32_t>(a.size());
    while (carry) {
        r.digits.push_back(static_cast<std::uint32_t>(carry % s));
        if (t) r.ids.push_back(carry_id);
        carry /= s;
        if (carry)
            carry_id = t ? t->emit(OpKind::CarryPropagate, carry_id, kNoNode, l) : kNoNode;
        ++l;
    }
    r.sign = sign;
    normalize(r);
    return r;
}

// Exact division by a small nonzero scalar, most-significant digit first.
// Throws InterpolationError if the division leaves a remainder.
inline DigitString exact_div_small(const DigitString& a, std::int64_t d, Tracer* t = nullptr) {
    detail::require_tracked(t, a);
    if (d == 0) throw ConfigError("division by zero");
    DigitString r;
    r.base = a.base;
    if (a.is_zero()) return r;
    std::uint64_t mag = d < 0 ? -static_cast<std::uint64_t>(d) : static_cast<std::uint64_t>(d);
    int sign = (d < 0) ? -a.sign : a.sign;
    if (mag == 1) {
        r = a;
        r.sign = sign;
        return r;
    }
    const std::uint64_t s = a.base;
    if (mag > std::numeric_limits<std::uint64_t>::max() / s)
        throw std::logic_error("divisor too large for exact digit arithmetic");
    r.digits.assign(a.size(), 0);
    if (t) r.ids.assign(a.size(), kNoNode);
    std::uint64_t rem = 0;
    NodeId rem_id = kNoNode;
    for (std::size_t i = a.size(); i-- > 0;) {
        std::uint64_t cur = rem * s + a.digits[i];
        NodeId qid = t ? t->emit(OpKind::ExactDivSmall, a.id_at(i), rem_id,
                                 static_cast<std::int32_t>(i), static_cast<std::int64_t>(mag))
                       : kNoNode;
        r.digits[i] = static_cast<std::uint32_t>(cur / mag);
        if (t) r.ids[i] = qid;
        rem = cur % mag;
        if (rem && i > 0)
            rem_id = t ? t->emit(OpKind::CarryPropagate, a.id_at(i), rem_id, static_cast<std::int32_t>(i)) : kNoNode;
        else
            rem_id = kNoNode;
    }
    if (rem != 0)
        throw InterpolationError("non-exact division by " + std::to_string(mag) +
                                 " of " + to_debug_string(a));
    r.sign = sign;
    normalize(r);
    return r;
}

// Multiply by base^shift: prepend positional zeros. No digit arithmetic
// happens; a Shift marker records the step in the trace.
inline DigitString shift_left(const DigitString& a, std::size_t shift, Tracer* t = nullptr) {
    if (a.is_zero() || shift == 0) return a;
    DigitString r;
    r.base = a.base;
    r.sign = a.sign;
    r.digits.assign(shift, 0);
    r.digits.insert(r.digits.end(), a.digits.begin(), a.digits.end());
    if (!a.ids.empty() || t) {
        r.ids.assign(shift, kNoNode);
        r.ids.insert(r.ids.end(), a.ids.begin(), a.ids.end());
        if (t) t->emit_marker(OpKind::Shift, kNoNode, 0, static_cast<std::int64_t>(shift));
    }
    return r;
}

// Standard-class multiplication: computes all |a|*|b| elementary digit
// products, accumulates each output position through its own chain of
// additions, then resolves carries position by position.
inline DigitString schoolbook_mul(const DigitString& a, const DigitString& b, Tracer* t = nullptr) {
    detail::require_same_base(a, b);
    detail::require_tracked(t, a);
    detail::require_tracked(t, b);
    DigitString r;
    r.base = a.base;
    if (a.is_zero() || b.is_zero()) return r;
    const std::uint64_t s = a.base;
    const std::size_t la = a.size(), lb = b.size();
    const std::size_t npos = la + lb - 1;
    std::vector<detail::Cell> acc(npos);
    for (std::size_t i = 0; i < npos; ++i) {
        std::size_t jlo = i >= lb ? i - lb + 1 : 0;
        std::size_t jhi = std::min(la - 1, i);
        detail::Cell cell;
        bool first = true;
        for (std::size_t j = jlo; j <= jhi; ++j) {
            std::size_t l = i - j;
            std::uint64_t pv = static_cast<std::uint64_t>(a.digits[j]) * b.digits[l];
            NodeId pid = t ? t->emit(OpKind::ElementaryProduct, a.id_at(j), b.id_at(l),
                                     static_cast<std::int32_t>(i), 0,
                                     static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(l))
                           : kNoNode;
            if (first) {
                cell.val = pv;
                cell.id = pid;
                first = false;
            } else {
                cell.val += pv;
                cell.id = t ? t->emit(OpKind::Add, cell.id, pid, static_cast<std::int32_t>(i)) : kNoNode;
            }
        }
        acc[i] = cell;
    }
    std::uint64_t carry = 0;
    NodeId carry_id = kNoNode;
    r.digits.reserve(npos + 2);
    if (t) r.ids.reserve(npos + 2);
    std::size_t i = 0;
    while (i < npos || carry) {
        std::uint64_t tval = carry;
        NodeId tid = carry_id;
        if (i < npos) {
            tval += acc[i].val;
            if (t && carry_id != kNoNode)
                tid = t->emit(OpKind::Add, acc[i].id, carry_id, static_cast<std::int32_t>(i));
            else
                tid = acc[i].id;
        }
        r.digits.push_back(static_cast<std::uint32_t>(tval % s));
        if (t) r.ids.push_back(tid);
        carry = tval / s;
        if (carry)
            carry_id = t ? t->emit(OpKind::CarryPropagate, tid, kNoNode, static_cast<std::int32_t>(i)) : kNoNode;
        else
            carry_id = kNoNode;
        ++i;
    }
    r.sign = a.sign * b.sign;
    normalize(r);
    return r;
}

} // namespace hymul
