#pragma once

// Exact base-s positional integers. Digits are stored least-significant
// first, each in [0, base). The canonical zero has no digits and sign +1.
// When a value participates in a traced computation, `ids` runs parallel
// to `digits` and names the trace vertex that produced each digit
// (kNoNode for digits that exist only positionally, e.g. shift zeros).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hymul/errors.hpp"

namespace hymul {

using NodeId = std::int64_t;
inline constexpr NodeId kNoNode = -1;

inline constexpr std::uint32_t kMinBase = 2;
inline constexpr std::uint32_t kMaxBase = 1u << 16;
inline constexpr std::uint32_t kDefaultBase = 1u << 16;

struct DigitString {
    std::vector<std::uint32_t> digits;
    int sign = +1; // +1 or -1; canonical zero always +1
    std::uint32_t base = kDefaultBase;
    std::vector<NodeId> ids; // empty when untraced, else same length as digits

    bool is_zero() const { return digits.empty(); }
    std::size_t size() const { return digits.size(); }

    NodeId id_at(std::size_t i) const {
        return i < ids.size() ? ids[i] : kNoNode;
    }
};

inline void check_base(std::uint32_t base) {
    if (base < kMinBase || base > kMaxBase)
        throw ConfigError("base must lie in [2, 2^16], got " + std::to_string(base));
}

// Drop leading (most-significant) zero digits; force +1 on zero.
inline void normalize(DigitString& v) {
    while (!v.digits.empty() && v.digits.back() == 0) {
        v.digits.pop_back();
        if (!v.ids.empty()) v.ids.pop_back();
    }
    if (v.digits.empty()) {
        v.sign = +1;
        v.ids.clear();
    }
}

inline DigitString from_digits(std::vector<std::uint32_t> digits, int sign, std::uint32_t base) {
    check_base(base);
    if (sign != +1 && sign != -1) throw ConfigError("sign must be +1 or -1");
    for (std::uint32_t d : digits)
        if (d >= base) throw ConfigError("digit " + std::to_string(d) + " out of range for base " + std::to_string(base));
    DigitString v;
    v.digits = std::move(digits);
    v.sign = sign;
    v.base = base;
    normalize(v);
    return v;
}

inline DigitString from_uint64(std::uint64_t value, std::uint32_t base) {
    check_base(base);
    DigitString v;
    v.base = base;
    while (value != 0) {
        v.digits.push_back(static_cast<std::uint32_t>(value % base));
        value /= base;
    }
    return v;
}

inline DigitString from_int64(std::int64_t value, std::uint32_t base) {
    DigitString v = from_uint64(value < 0 ? -static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value), base);
    if (value < 0) v.sign = -1;
    return v;
}

// Magnitude as u64; throws ConfigError if it does not fit.
inline std::uint64_t to_uint64(const DigitString& v) {
    std::uint64_t acc = 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = v.digits.size(); i-- > 0;) {
        if (acc > limit / v.base) throw ConfigError("value does not fit in 64 bits");
        acc *= v.base;
        if (acc > limit - v.digits[i]) throw ConfigError("value does not fit in 64 bits");
        acc += v.digits[i];
    }
    return acc;
}

inline std::int64_t to_int64(const DigitString& v) {
    std::uint64_t mag = to_uint64(v);
    if (v.sign > 0) {
        if (mag > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw ConfigError("value does not fit in int64");
        return static_cast<std::int64_t>(mag);
    }
    if (mag > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw ConfigError("value does not fit in int64");
    return -static_cast<std::int64_t>(mag);
}

// Numeric equality (ids are identity metadata, not value).
inline bool same_value(const DigitString& a, const DigitString& b) {
    return a.base == b.base && a.sign == b.sign && a.digits == b.digits;
}

// -1 / 0 / +1 comparison of magnitudes; operands must share a base.
inline int compare_magnitude(const DigitString& a, const DigitString& b) {
    if (a.digits.size() != b.digits.size())
        return a.digits.size() < b.digits.size() ? -1 : +1;
    for (std::size_t i = a.digits.size(); i-- > 0;) {
        if (a.digits[i] != b.digits[i]) return a.digits[i] < b.digits[i] ? -1 : +1;
    }
    return 0;
}

inline std::string to_debug_string(const DigitString& v) {
    std::string s = v.sign < 0 ? "-[" : "+[";
    for (std::size_t i = 0; i < v.digits.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v.digits[i]);
    }
    s += "]b";
    s += std::to_string(v.base);
    return s;
}

} // namespace hymul
