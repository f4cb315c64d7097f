#pragma once

// Exception types used across the library. Each names the contract it guards.

#include <stdexcept>
#include <string>

namespace hymul {

// Invalid runtime configuration: bad base, mismatched operand bases,
// malformed machine descriptions, unparseable experiment configs.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Instruction tree fails validation for a given input size / base
// (evaluation points too large, wrong child count, duplicate points...).
struct PlanError : std::runtime_error {
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

// A division that must be exact left a remainder; indicates inconsistent
// interpolation values or a broken solve plan.
struct InterpolationError : std::runtime_error {
    explicit InterpolationError(const std::string& what) : std::runtime_error(what) {}
};

// Cache too small to hold the working set of a single operation.
struct InfeasibleSchedule : std::runtime_error {
    explicit InfeasibleSchedule(const std::string& what) : std::runtime_error(what) {}
};

// A parallel placement strategy cannot map the plan onto P processors.
struct StrategyError : std::runtime_error {
    explicit StrategyError(const std::string& what) : std::runtime_error(what) {}
};

// A bound evaluator was asked for a parameter regime where its formula
// does not apply.
struct RegimeError : std::runtime_error {
    explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hymul
