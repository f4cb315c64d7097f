#pragma once

// Exact integer handling of the Vandermonde system V(x)[i][j] = x_i^j for
// a point set x_0..x_{2k-2}. Evaluation is a matrix-vector product over
// digit strings; the inverse solve runs Newton's divided differences
// (a fraction-free triangular elimination; every division is exact for
// consistent inputs) followed by an integer change of basis back to
// monomial coefficients. Systems are cached per (k, points).

#include <map>
#include <memory>
#include <vector>

#include "hymul/digit_ops.hpp"
#include "hymul/eval_points.hpp"

namespace hymul {

class VandermondeSystem {
public:
    VandermondeSystem(int k, std::vector<std::int64_t> pts) : k_(k), pts_(std::move(pts)) {
        check_points(k_, pts_);
        const int m = static_cast<int>(pts_.size());
        powers_.assign(m, std::vector<std::int64_t>(k_, 1));
        for (int i = 0; i < m; ++i)
            for (int j = 1; j < k_; ++j) powers_[i][j] = checked_pow(pts_[i], j);
    }

    int k() const { return k_; }
    const std::vector<std::int64_t>& points() const { return pts_; }

    // p(x_i) = sum_j coeffs[j] * x_i^j for every point, via scalar
    // multiplies and signed additions.
    std::vector<DigitString> evaluate(const std::vector<DigitString>& coeffs, Tracer* t = nullptr) const {
        if (coeffs.size() != static_cast<std::size_t>(k_))
            throw PlanError("evaluate expects exactly k blocks");
        std::vector<DigitString> vals;
        vals.reserve(pts_.size());
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            DigitString acc = coeffs[0];
            for (int j = 1; j < k_; ++j) {
                if (powers_[i][j] == 0) continue;
                DigitString term = scalar_mul(coeffs[j], powers_[i][j], t);
                acc = add_signed(acc, term, t);
            }
            vals.push_back(std::move(acc));
        }
        return vals;
    }

    // Solve V r = vals exactly: divided differences, then Newton-to-
    // monomial conversion. Throws InterpolationError when the inputs are
    // not the evaluations of an integer polynomial.
    std::vector<DigitString> solve(const std::vector<DigitString>& vals, Tracer* t = nullptr) const {
        const int m = static_cast<int>(pts_.size());
        if (vals.size() != static_cast<std::size_t>(m))
            throw PlanError("solve expects exactly 2k-1 values");
        std::vector<DigitString> d = vals;
        for (int lvl = 1; lvl < m; ++lvl) {
            for (int i = m - 1; i >= lvl; --i) {
                DigitString diff = sub_signed(d[i], d[i - 1], t);
                std::int64_t div = pts_[i] - pts_[i - lvl];
                d[i] = exact_div_small(diff, div, t);
            }
        }
        // Horner over the Newton basis: R(x) = (...(d_{m-1} (x - x_{m-2}) + d_{m-2})...)
        std::vector<DigitString> r;
        r.push_back(d[m - 1]);
        for (int lvl = m - 2; lvl >= 0; --lvl) {
            std::vector<DigitString> next(r.size() + 1);
            next[0] = add_signed(scalar_mul(r[0], -pts_[lvl], t), d[lvl], t);
            for (std::size_t i = 1; i < r.size(); ++i)
                next[i] = add_signed(r[i - 1], scalar_mul(r[i], -pts_[lvl], t), t);
            next[r.size()] = r[r.size() - 1];
            r = std::move(next);
        }
        return r;
    }

private:
    int k_;
    std::vector<std::int64_t> pts_;
    std::vector<std::vector<std::int64_t>> powers_;
};

inline std::shared_ptr<const VandermondeSystem> vandermonde_for(int k, const std::vector<std::int64_t>& pts) {
    static std::map<std::pair<int, std::vector<std::int64_t>>, std::shared_ptr<const VandermondeSystem>> cache;
    auto key = std::make_pair(k, pts);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto sys = std::make_shared<const VandermondeSystem>(k, pts);
    cache.emplace(std::move(key), sys);
    return sys;
}

} // namespace hymul
