#pragma once

#include "causalex/causation.hpp"
#include "causalex/explanations.hpp"
#include "causalex/fairness.hpp"
#include "causalex/model.hpp"
#include "causalex/sufficiency.hpp"

namespace causalex::oracle {

// Definition-transcribing twins of the query operations: no memoization,
// no candidate-then-verify shortcut, no domination pruning. Strong
// sufficiency enumerates every network value vector; goodness filters the
// fully enumerated explanation sets pairwise. They share only the
// bottom-level solver with the optimized paths and exist for differential
// testing. The default budget is deliberately tighter.

inline constexpr std::uint64_t kOracleBudget = 1'000'000;

inline Options oracle_options() {
    Options o;
    o.budget = kOracleBudget;
    o.memo = false;
    return o;
}

SuffDecision weakly_sufficient(const Model& m, const Assignment& antecedent,
                               const Assignment& consequent, const Options& opts = oracle_options());

SuffDecision directly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent,
                                 const Options& opts = oracle_options());

StrongResult strongly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent,
                                 const std::vector<std::string>& network,
                                 const Options& opts = oracle_options());

std::vector<SufficientExplanation> good_sufficient_explanations(
    const Model& m, const Assignment& context, const std::string& target, const Rational& value,
    const Options& opts = oracle_options());

DependenceResult counterfactually_depends(const Model& m, const Assignment& context,
                                          const Assignment& x, const Assignment& x_prime,
                                          const std::string& target, const Rational& value,
                                          WitnessMode mode,
                                          const Options& opts = oracle_options());

std::vector<CounterfactualExplanation> good_counterfactual_explanations(
    const Model& m, const Assignment& context, const std::string& target, const Rational& value,
    const Options& opts = oracle_options());

ReplaceResult can_replace(const Model& m, const SufficientExplanation& explanation,
                          const Assignment& x_part, const Assignment& x_prime,
                          const Options& opts = oracle_options());

CauseResult actual_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const Assignment& x_prime, const std::string& target,
                         const Rational& value, const Options& opts = oracle_options());

CauseResult optimal_cause(const Model& m, const Assignment& context, const Assignment& x,
                          const std::string& target, const Rational& value,
                          const Options& opts = oracle_options());

CauseResult direct_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const std::string& target, const Rational& value,
                         const Options& opts = oracle_options());

FairnessVerdict is_fair(const Model& m, const std::string& protected_var,
                        const PathSet& unfair_paths, const std::string& output,
                        const Options& opts = oracle_options());

StandardFairnessResult standardly_counterfactually_fair(const Model& m,
                                                        const std::string& protected_var,
                                                        const std::string& output,
                                                        const Options& opts = oracle_options());

}  // namespace causalex::oracle
