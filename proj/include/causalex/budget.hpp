#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace causalex {

// A value fell outside a variable's declared domain, or a name did not
// resolve against the model's signature.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime evaluation failure (unbound variable, division by zero).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation tried to enumerate more assignments than its budget allows.
// Exceeding the budget is an explicit error, never silent truncation.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(std::uint64_t cap)
        : std::runtime_error("enumeration budget of " + std::to_string(cap) +
                             " assignments exceeded"),
          cap(cap) {}
    std::uint64_t cap;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Counts assignments evaluated by one top-level operation. Each full model
// solve and each single-equation probe costs one unit; nested helper calls
// share the caller's counter.
class Budget {
public:
    explicit Budget(std::uint64_t cap = kDefaultBudget) : cap_(cap) {}

    void charge(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > cap_) throw BudgetExceeded(cap_);
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

// Per-call knobs shared by every query operation.
struct Options {
    std::uint64_t budget = kDefaultBudget;
    // Direct-sufficiency verdicts are context-independent and cached on the
    // model; differential tests switch the cache off.
    bool memo = true;
    // Cause queries report the canonical-first evidence; this keeps all
    // certifying explanations in the result.
    bool all_evidence = false;
};

}  // namespace causalex
