#pragma once

// Evaluation point sets for a k-way split: 2k-1 distinct small integers.
// Infinity is deliberately not a point; every value is a finite
// polynomial evaluation.

#include <cstdint>
#include <set>
#include <vector>

#include "hymul/errors.hpp"

namespace hymul {

// 0, 1, -1, 2, -2, ... in order of magnitude.
inline std::vector<std::int64_t> default_points(int k) {
    if (k < 2) throw PlanError("split factor must be at least 2");
    std::vector<std::int64_t> pts;
    pts.push_back(0);
    for (int m = 1; static_cast<int>(pts.size()) < 2 * k - 1; ++m) {
        pts.push_back(m);
        if (static_cast<int>(pts.size()) < 2 * k - 1) pts.push_back(-m);
    }
    return pts;
}

inline void check_points(int k, const std::vector<std::int64_t>& pts) {
    if (k < 2) throw PlanError("split factor must be at least 2");
    if (pts.size() != static_cast<std::size_t>(2 * k - 1))
        throw PlanError("need exactly 2k-1 evaluation points, got " + std::to_string(pts.size()));
    std::set<std::int64_t> uniq(pts.begin(), pts.end());
    if (uniq.size() != pts.size()) throw PlanError("evaluation points must be distinct");
}

// |pt|^e with overflow detection; throws PlanError when the power leaves
// the range exact scalar arithmetic can handle.
inline std::int64_t checked_pow(std::int64_t pt, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (pt != 0 && (r > (std::int64_t(1) << 46) / (pt < 0 ? -pt : pt)))
            throw PlanError("evaluation point power overflows exact scalar range");
        r *= pt;
    }
    return r;
}

} // namespace hymul
