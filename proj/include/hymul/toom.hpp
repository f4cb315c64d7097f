#pragma once

// The hybrid multiplication engine. A multiply walks an instruction tree:
// standard nodes run the digit-by-digit algorithm, split nodes break each
// operand into k blocks, evaluate both block polynomials at 2k-1 points,
// multiply the evaluations recursively (one child tree each), interpolate
// the product polynomial's coefficients, and recompose them with shifts.

#include <vector>

#include "hymul/digit_ops.hpp"
#include "hymul/plan.hpp"
#include "hymul/vandermonde.hpp"

namespace hymul {

// k blocks of width w, least significant first; missing high blocks are
// canonical zeros. Digit vertices carry over into the blocks.
inline std::vector<DigitString> split(const DigitString& a, std::size_t w, int k) {
    std::vector<DigitString> blocks(k);
    for (int i = 0; i < k; ++i) {
        DigitString& b = blocks[i];
        b.base = a.base;
        std::size_t lo = w * i;
        if (lo >= a.size()) continue;
        std::size_t hi = std::min(a.size(), lo + w);
        b.digits.assign(a.digits.begin() + lo, a.digits.begin() + hi);
        if (!a.ids.empty()) b.ids.assign(a.ids.begin() + lo, a.ids.begin() + hi);
        normalize(b);
    }
    return blocks;
}

// C = sum_i coeffs[i] * base^(i*w).
inline DigitString recompose(const std::vector<DigitString>& coeffs, std::size_t w, Tracer* t = nullptr) {
    DigitString acc;
    if (!coeffs.empty()) acc = coeffs[0];
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        acc = add_signed(acc, shift_left(coeffs[i], i * w, t), t);
    return acc;
}

inline DigitString multiply(const DigitString& a, const DigitString& b, const InstructionTree& plan,
                            Tracer* t = nullptr) {
    detail::require_same_base(a, b);
    std::int32_t sub = -1;
    if (t) sub = t->push_sub(plan.k, a, b);
    (void)sub;
    DigitString result;
    if (plan.is_standard()) {
        result = schoolbook_mul(a, b, t);
    } else {
        const int k = plan.k;
        std::size_t m = std::max(a.size(), b.size());
        if (m == 0) m = 1;
        std::size_t w = (m + k - 1) / k;
        if (w == 0) w = 1;
        auto vsys = vandermonde_for(k, plan.pts);
        std::vector<DigitString> ablocks = split(a, w, k);
        std::vector<DigitString> bblocks = split(b, w, k);
        std::vector<DigitString> pa = vsys->evaluate(ablocks, t);
        std::vector<DigitString> pb = vsys->evaluate(bblocks, t);
        if (a.sign < 0)
            for (auto& v : pa) v = negate_copy(v);
        if (b.sign < 0)
            for (auto& v : pb) v = negate_copy(v);
        std::vector<DigitString> prods(pa.size());
        for (std::size_t i = 0; i < pa.size(); ++i)
            prods[i] = multiply(pa[i], pb[i], *plan.children[i], t);
        std::vector<DigitString> coeffs = vsys->solve(prods, t);
        result = recompose(coeffs, w, t);
    }
    if (t) t->pop_sub(result);
    return result;
}

} // namespace hymul
