#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/model.hpp"

namespace causalex {

struct SuffDecision {
    bool holds = false;
    // When false: the enumeration-first falsifying context, and for the
    // direct check also the falsifying setting of the remaining variables.
    std::optional<Assignment> cex_context;
    std::optional<Assignment> cex_settings;
};

// Setting the antecedent guarantees the consequent in every context, with
// no other interventions.
SuffDecision weakly_sufficient(const Model& m, const Assignment& antecedent,
                               const Assignment& consequent, const Options& opts = {});

// ... in every context and regardless of interventions on all remaining
// endogenous variables. Context-independent, so verdicts are memoized on
// the model for the life of the process.
SuffDecision directly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent, const Options& opts = {});

struct StrongResult {
    bool holds = false;
    // The forced network values n (a superset of the consequent) when the
    // antecedent is directly sufficient for network = n.
    Assignment network_values;
    std::optional<Assignment> cex_context;
    std::optional<Assignment> cex_settings;
};

// Strong sufficiency along a network: the antecedent is directly
// sufficient for some constant values of the whole network extending the
// consequent. One evaluation proposes the candidate values (they are
// forced if they exist); full enumeration confirms.
StrongResult strongly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent,
                                 const std::vector<std::string>& network,
                                 const Options& opts = {});

namespace detail {

struct DirectVerdict;  // caches.hpp

// Index-level checks shared by the explanation and causation modules.
// `antecedent` and `consequent` are endogenous partial assignments; the
// free variables C are the remaining endogenous ones.
DirectVerdict direct_check(const Model& m, const VarValues& antecedent,
                           const VarValues& consequent, Budget& budget, bool memo);

struct StrongOutcome {
    bool holds = false;
    VarValues network_values;
    VarValues cex_settings;
    std::vector<int> cex_context;
};

// Forced values of `network` under the antecedent, or a refutation. When
// `require` is given, the forced values must extend it; a candidate that
// misses it refutes immediately, with the candidate-defining point as the
// counterexample (it already shows the required values are not forced).
StrongOutcome strong_values(const Model& m, const VarValues& antecedent,
                            const std::vector<VarId>& network, Budget& budget, bool memo,
                            const VarValues* require = nullptr);

}  // namespace detail

}  // namespace causalex
