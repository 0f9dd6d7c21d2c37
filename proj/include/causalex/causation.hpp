#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/explanations.hpp"
#include "causalex/model.hpp"

namespace causalex {

struct ReplaceResult {
    bool can = false;
    // The sub-network certifying the replacement (contains the target).
    std::vector<std::string> certificate;
};

// The contrast values x' can replace x inside the explanation
// ((X=x, W=w), N) of target=value: some network N' contained in N makes
// ((X=x', W=w), N') a sufficient explanation of the same target=value.
// `x_part` names the X portion of the explanation's antecedent; the rest
// is the witness W. Contrast values must differ componentwise.
ReplaceResult can_replace(const Model& m, const SufficientExplanation& explanation,
                          const Assignment& x_part, const Assignment& x_prime,
                          const Options& opts = {});

// Contrastive cause claim with its certifying evidence.
struct CauseStatement {
    Assignment cause;                   // X = x
    std::optional<Assignment> contrast; // x' (absent for optimal/direct)
    std::string target;
    Rational target_value;
    SufficientExplanation evidence;     // good explanation ((X,W), N)
    Assignment witness;                 // the W = w part of the evidence
};

struct CauseResult {
    bool holds = false;
    std::optional<CauseStatement> statement;  // canonical-first evidence
    std::vector<CauseStatement> all;          // with Options::all_evidence
    std::string refutation;
};

// x rather than x' caused target=value: x is part of a good actual
// sufficient explanation in which it cannot be replaced by x'.
CauseResult actual_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const Assignment& x_prime, const std::string& target,
                         const Rational& value, const Options& opts = {});

// No contrast values whatsoever can replace x in some good explanation.
CauseResult optimal_cause(const Model& m, const Assignment& context, const Assignment& x,
                          const std::string& target, const Rational& value,
                          const Options& opts = {});

// Existentially quantified contrast: some value tuple over X differing
// from the actual one in at least one variable cannot replace x in some
// good explanation containing it. This is the "there exist values x'"
// form of the causation results; a tuple keeping part of X at its actual
// values makes the claim about the changed part while X stays whole.
CauseResult actual_cause_some_contrast(const Model& m, const Assignment& context,
                                       const Assignment& x, const std::string& target,
                                       const Rational& value, const Options& opts = {});

// x is part of a good actual direct sufficient explanation (network is
// just the target; goodness is antecedent-set minimality, which for the
// minimal network coincides with global goodness).
CauseResult direct_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const std::string& target, const Rational& value,
                         const Options& opts = {});

// Every certified (X = x, x') pair for target=value, canonical order.
std::vector<CauseStatement> enumerate_actual_causes(const Model& m, const Assignment& context,
                                                    const std::string& target,
                                                    const Rational& value,
                                                    const Options& opts = {});

namespace detail {

// Same as actual_cause but charging the caller's budget, for operations
// (like the fairness audit) that make many cause queries under one cap.
CauseResult actual_cause_budgeted(const Model& m, const Assignment& context,
                                  const Assignment& x, const Assignment& x_prime,
                                  const std::string& target, const Rational& value,
                                  Budget& budget, const Options& opts);

}  // namespace detail

}  // namespace causalex
