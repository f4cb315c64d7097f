#pragma once

// Communication lower-bound evaluators.
//
// Sequential bounds count words moved between a cache of M digits and slow
// memory, in blocks of B words per transfer. Parallel (memory-independent)
// bounds count words sent or received by the busiest of P processors, in
// messages of B_m words.
//
// Evaluators come in two flavours:
//   * general: driven by a maximal-subproblem census of an arbitrary
//     instruction tree (standard nodes = type 1, split nodes whose children
//     all fall below the threshold = type 2);
//   * closed form: for uniform plans (every split uses the same k down to a
//     cutoff n0, standard below) and for the pure O(n^2) algorithm.
//
// Powers x^{log_k(2k-1)} are evaluated exactly when x is a perfect power of
// k, so closed-form values on power-of-k inputs carry no rounding error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hymul/census.hpp"
#include "hymul/errors.hpp"
#include "hymul/plan.hpp"

namespace hymul {

// One evaluated bound: the regime tag names the formula, terms record the
// intermediate quantities (inner max arguments, scan winners, parameters)
// for reporting, value is the final word count.
struct BoundReport {
    std::string regime;
    std::vector<std::pair<std::string, double>> terms;
    double value = 0.0;

    double term(const std::string& name) const {
        for (const auto& t : terms)
            if (t.first == name) return t.second;
        return 0.0;
    }
    bool has_term(const std::string& name) const {
        for (const auto& t : terms)
            if (t.first == name) return true;
        return false;
    }
};

namespace detail {

// If x == k^t for an integer t >= 0, return t.
inline std::optional<std::uint32_t> exact_power_exponent(std::uint64_t x, std::uint64_t k) {
    if (k < 2 || x == 0) return std::nullopt;
    std::uint32_t t = 0;
    while (x % k == 0) {
        x /= k;
        ++t;
    }
    return x == 1 ? std::optional<std::uint32_t>(t) : std::nullopt;
}

inline double ipow(double b, std::uint32_t e) {
    double r = 1.0;
    while (e--) r *= b;
    return r;
}

// x^{log_k(2k-1)}: exact (2k-1)^t when x = k^t, else via std::pow.
inline double pow_log_ratio(double x, std::uint32_t k) {
    if (x <= 0.0) return 0.0;
    if (x == std::floor(x) && x < 9e18) {
        auto t = exact_power_exponent(static_cast<std::uint64_t>(x), k);
        if (t) return ipow(static_cast<double>(2 * k - 1), *t);
    }
    return std::pow(x, std::log(static_cast<double>(2 * k - 1)) / std::log(static_cast<double>(k)));
}

// x^{log_k(2k-1)/2}: exact (2k-1)^t when x = k^{2t}, else via std::pow.
inline double pow_half_log_ratio(double x, std::uint32_t k) {
    if (x <= 0.0) return 0.0;
    if (x == std::floor(x) && x < 9e18) {
        auto t = exact_power_exponent(static_cast<std::uint64_t>(x), k);
        if (t && *t % 2 == 0) return ipow(static_cast<double>(2 * k - 1), *t / 2);
    }
    return std::pow(x, 0.5 * std::log(static_cast<double>(2 * k - 1)) / std::log(static_cast<double>(k)));
}

// P^{1/log_k(2k-1)} = P^{log_{2k-1}(k)}: exact k^t when P = (2k-1)^t.
inline double root_log_ratio(double p, std::uint32_t k) {
    if (p <= 0.0) return 0.0;
    if (p == std::floor(p) && p < 9e18) {
        auto t = exact_power_exponent(static_cast<std::uint64_t>(p), 2 * k - 1);
        if (t) return ipow(static_cast<double>(k), *t);
    }
    return std::pow(p, std::log(static_cast<double>(k)) / std::log(static_cast<double>(2 * k - 1)));
}

inline void require_positive(std::uint64_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be at least 1");
}

inline void require_split_params(std::uint32_t k, std::size_t n0) {
    if (k < 2) throw ConfigError("split arity k must be at least 2");
    if (n0 == 0) throw ConfigError("cutoff n0 must be at least 1");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Sequential, census-driven. The census must be taken at threshold 8M.
// Bound: max{ 2n, |T|/(4M), nu(8M) * M } / B  where 4|T| = sum n_i^2 over
// type-1 entries and nu counts all entries.
// ---------------------------------------------------------------------------
inline BoundReport seq_bound_general(const MspCensus& c, std::size_t n, std::uint64_t M,
                                     std::uint64_t B) {
    detail::require_positive(n, "n");
    detail::require_positive(M, "M");
    detail::require_positive(B, "B");
    if (B > M) throw ConfigError("block size B exceeds cache size M");
    if (c.threshold != 8 * M)
        throw ConfigError("census threshold must equal 8M for the sequential bound");

    double io_term = 2.0 * static_cast<double>(n);
    double product_term = c.t_card() / (4.0 * static_cast<double>(M));
    double count_term = static_cast<double>(c.nu()) * static_cast<double>(M);

    BoundReport r;
    r.regime = "seq-general";
    r.terms = {{"n", static_cast<double>(n)},
               {"M", static_cast<double>(M)},
               {"B", static_cast<double>(B)},
               {"io_term", io_term},
               {"product_term", product_term},
               {"count_term", count_term},
               {"nu", static_cast<double>(c.nu())},
               {"nu1", static_cast<double>(c.nu1())}};
    r.value = std::max({io_term, product_term, count_term}) / static_cast<double>(B);
    return r;
}

inline BoundReport seq_bound_general(const InstructionTree& plan, std::size_t n,
                                     std::uint32_t base, std::uint64_t M, std::uint64_t B,
                                     SizeModel model = SizeModel::Exact) {
    return seq_bound_general(census(plan, n, 8 * M, base, model), n, M, B);
}

// ---------------------------------------------------------------------------
// Parallel, census-driven, local memories of size M.
// Bound: max{ |T|/(4M), nu(8M) * M } / (P * B_m).
// ---------------------------------------------------------------------------
inline BoundReport par_bound_general(const MspCensus& c, std::size_t n, std::uint64_t M,
                                     std::uint64_t P, std::uint64_t B_m) {
    detail::require_positive(n, "n");
    detail::require_positive(M, "M");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    if (B_m > M) throw ConfigError("message block size B_m exceeds local memory M");
    if (c.threshold != 8 * M)
        throw ConfigError("census threshold must equal 8M for the parallel bound");

    double product_term = c.t_card() / (4.0 * static_cast<double>(M));
    double count_term = static_cast<double>(c.nu()) * static_cast<double>(M);

    BoundReport r;
    r.regime = "par-general";
    r.terms = {{"n", static_cast<double>(n)},
               {"M", static_cast<double>(M)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)},
               {"product_term", product_term},
               {"count_term", count_term},
               {"nu", static_cast<double>(c.nu())}};
    r.value = std::max(product_term, count_term) / (static_cast<double>(P) * static_cast<double>(B_m));
    return r;
}

inline BoundReport par_bound_general(const InstructionTree& plan, std::size_t n,
                                     std::uint32_t base, std::uint64_t M, std::uint64_t P,
                                     std::uint64_t B_m, SizeModel model = SizeModel::Exact) {
    return par_bound_general(census(plan, n, 8 * M, base, model), n, M, P, B_m);
}

// ---------------------------------------------------------------------------
// Sequential, closed form for uniform plans (arity k down to cutoff n0):
// (n / max{n0, M})^{log_k(2k-1)} * max{1, n0/M}^2 * M / B.
// ---------------------------------------------------------------------------
inline BoundReport seq_bound_uniform(std::size_t n, std::uint64_t M, std::uint64_t B,
                                     std::uint32_t k, std::size_t n0) {
    detail::require_positive(n, "n");
    detail::require_positive(M, "M");
    detail::require_positive(B, "B");
    detail::require_split_params(k, n0);
    if (B > M) throw ConfigError("block size B exceeds cache size M");

    double floor_size = static_cast<double>(std::max<std::uint64_t>(n0, M));
    double recursion_factor = detail::pow_log_ratio(static_cast<double>(n) / floor_size, k);
    if (static_cast<double>(n) <= floor_size) recursion_factor = 1.0;
    double leaf = std::max(1.0, static_cast<double>(n0) / static_cast<double>(M));
    double leaf_factor = leaf * leaf;

    BoundReport r;
    r.regime = "seq-uniform";
    r.terms = {{"n", static_cast<double>(n)},
               {"M", static_cast<double>(M)},
               {"B", static_cast<double>(B)},
               {"k", static_cast<double>(k)},
               {"n0", static_cast<double>(n0)},
               {"recursion_factor", recursion_factor},
               {"leaf_factor", leaf_factor}};
    r.value = recursion_factor * leaf_factor * static_cast<double>(M) / static_cast<double>(B);
    return r;
}

// Parallel counterpart on P processors: same numerator over P * B_m.
inline BoundReport par_bound_uniform(std::size_t n, std::uint64_t M, std::uint64_t P,
                                     std::uint64_t B_m, std::uint32_t k, std::size_t n0) {
    BoundReport seq = seq_bound_uniform(n, M, B_m, k, n0);
    BoundReport r;
    r.regime = "par-uniform";
    r.terms = seq.terms;
    r.terms.emplace_back("P", static_cast<double>(P));
    detail::require_positive(P, "P");
    r.value = seq.value / static_cast<double>(P);
    return r;
}

// ---------------------------------------------------------------------------
// Memory-independent parallel bound, census-driven. With input balance
// alpha (busiest processor holds alpha*n/P input digits) the busiest
// processor moves at least
//   max over n' in [alpha*n/P, n] of
//     n' * min{ 1/4, sqrt(nu1(n')/(8P)) + nu(n')/(2P) } - alpha*n/P
// words (clamped at 0), in units of B_m. The census as a function of the
// threshold n' is piecewise constant and only changes at plan node sizes,
// and the objective grows linearly inside each piece, so scanning the
// distinct node sizes (plus n itself) finds the maximum.
// ---------------------------------------------------------------------------
inline BoundReport memind_bound_general(const InstructionTree& plan, std::size_t n,
                                        std::uint32_t base, std::uint64_t P, std::uint64_t B_m,
                                        double alpha, SizeModel model = SizeModel::Exact) {
    detail::require_positive(n, "n");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    if (alpha < 1.0 || alpha > static_cast<double>(P))
        throw ConfigError("input balance alpha must lie in [1, P]");

    double low = alpha * static_cast<double>(n) / static_cast<double>(P);

    std::vector<std::size_t> sizes;
    collect_sizes(plan, n, base, model, sizes);
    sizes.push_back(n);
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    double best = 0.0;
    double best_size = static_cast<double>(n);
    double best_rate = 0.0;
    for (std::size_t s : sizes) {
        if (static_cast<double>(s) < low || s > n) continue;
        MspCensus c = census(plan, n, s, base, model);
        double rate = std::min(0.25, std::sqrt(static_cast<double>(c.nu1()) /
                                               (8.0 * static_cast<double>(P))) +
                                         static_cast<double>(c.nu()) /
                                             (2.0 * static_cast<double>(P)));
        double obj = static_cast<double>(s) * rate - low;
        if (obj > best) {
            best = obj;
            best_size = static_cast<double>(s);
            best_rate = rate;
        }
    }

    BoundReport r;
    r.regime = "memind-general";
    r.terms = {{"n", static_cast<double>(n)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)},
               {"alpha", alpha},
               {"scan_size", best_size},
               {"scan_rate", best_rate}};
    r.value = best / static_cast<double>(B_m);
    return r;
}

// ---------------------------------------------------------------------------
// Memory-independent bound, closed form for uniform plans. Writing
// e = log_k(2k-1):
//   if n / P^{1/e} >= n0:  n / (B_m * P^{1/e})
//   else:                  (n/n0)^{e/2} * n0 / (B_m * sqrt(P))
// ---------------------------------------------------------------------------
inline BoundReport memind_bound_uniform(std::size_t n, std::uint64_t P, std::uint64_t B_m,
                                        std::uint32_t k, std::size_t n0) {
    detail::require_positive(n, "n");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    detail::require_split_params(k, n0);

    double proot = detail::root_log_ratio(static_cast<double>(P), k);
    double pivot = static_cast<double>(n) / proot;

    BoundReport r;
    r.regime = "memind-uniform";
    r.terms = {{"n", static_cast<double>(n)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)},
               {"k", static_cast<double>(k)},
               {"n0", static_cast<double>(n0)},
               {"root_of_P", proot},
               {"pivot", pivot}};
    if (pivot >= static_cast<double>(n0)) {
        r.terms.emplace_back("case", 1.0);
        r.value = pivot / static_cast<double>(B_m);
    } else {
        r.terms.emplace_back("case", 2.0);
        double growth = detail::pow_half_log_ratio(
            static_cast<double>(n) / static_cast<double>(n0), k);
        r.value = growth * static_cast<double>(n0) /
                  (static_cast<double>(B_m) * std::sqrt(static_cast<double>(P)));
    }
    return r;
}

// Pure O(n^2) algorithm: n / (B_m * sqrt(P)).
inline BoundReport memind_bound_standard(std::size_t n, std::uint64_t P, std::uint64_t B_m) {
    detail::require_positive(n, "n");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    BoundReport r;
    r.regime = "memind-standard";
    r.terms = {{"n", static_cast<double>(n)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)}};
    r.value = static_cast<double>(n) /
              (static_cast<double>(B_m) * std::sqrt(static_cast<double>(P)));
    return r;
}

// ---------------------------------------------------------------------------
// Memory-independent bounds under computational balance beta (busiest-to-
// average elementary-product ratio per processor, beta in (0, 1]).
// Pure O(n^2): sqrt(beta)*n/(sqrt(P)*B_m) - 2n/(P*B_m), clamped at 0.
// ---------------------------------------------------------------------------
inline BoundReport balanced_comp_bound_standard(std::size_t n, std::uint64_t P,
                                                std::uint64_t B_m, double beta) {
    detail::require_positive(n, "n");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    if (beta <= 0.0 || beta > 1.0)
        throw ConfigError("computation balance beta must lie in (0, 1]");

    double main_term = std::sqrt(beta) * static_cast<double>(n) /
                       (std::sqrt(static_cast<double>(P)) * static_cast<double>(B_m));
    double slack_term = 2.0 * static_cast<double>(n) /
                        (static_cast<double>(P) * static_cast<double>(B_m));

    BoundReport r;
    r.regime = "balanced-comp-standard";
    r.terms = {{"n", static_cast<double>(n)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)},
               {"beta", beta},
               {"main_term", main_term},
               {"slack_term", slack_term}};
    r.value = std::max(0.0, main_term - slack_term);
    return r;
}

// Uniform plans under computational balance. Requires the cutoff to sit
// above the per-processor share: n0 > n * P^{-1/log_k(2k-1)}; otherwise the
// formula does not apply and a RegimeError is thrown.
// Value: (n/n0)^{log_k(2k-1)/2} * sqrt(beta) * n0 / (B_m * sqrt(P)).
inline BoundReport balanced_comp_bound_uniform(std::size_t n, std::uint64_t P,
                                               std::uint64_t B_m, double beta,
                                               std::uint32_t k, std::size_t n0) {
    detail::require_positive(n, "n");
    detail::require_positive(P, "P");
    detail::require_positive(B_m, "B_m");
    detail::require_split_params(k, n0);
    if (beta <= 0.0 || beta > 1.0)
        throw ConfigError("computation balance beta must lie in (0, 1]");

    double proot = detail::root_log_ratio(static_cast<double>(P), k);
    double pivot = static_cast<double>(n) / proot;
    if (static_cast<double>(n0) <= pivot)
        throw RegimeError("balanced-comp uniform bound requires n0 > n * P^{-1/log_k(2k-1)}");

    double growth = detail::pow_half_log_ratio(
        static_cast<double>(n) / static_cast<double>(n0), k);

    BoundReport r;
    r.regime = "balanced-comp-uniform";
    r.terms = {{"n", static_cast<double>(n)},
               {"P", static_cast<double>(P)},
               {"B_m", static_cast<double>(B_m)},
               {"beta", beta},
               {"k", static_cast<double>(k)},
               {"n0", static_cast<double>(n0)},
               {"pivot", pivot},
               {"growth", growth}};
    r.value = growth * std::sqrt(beta) * static_cast<double>(n0) /
              (static_cast<double>(B_m) * std::sqrt(static_cast<double>(P)));
    return r;
}

} // namespace hymul
