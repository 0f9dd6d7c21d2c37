#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/model.hpp"
#include "causalex/sufficiency.hpp"

namespace causalex {

// Strongly sufficient antecedent together with the safeguarded network.
// The network always contains the target internally; displays that mimic
// the customary "along {X2}" notation elide it.
struct SufficientExplanation {
    Assignment antecedent;              // X = x
    std::vector<std::string> network;   // N, declaration order, includes target
    std::string target;
    Rational target_value;
    Assignment network_values;          // the forced n
    bool actual = false;                // (M,u) |= X = x
    bool direct = false;                // N == {target}
};

struct ExplanationCheck {
    bool holds = false;
    std::optional<SufficientExplanation> explanation;
    std::optional<Assignment> cex_context;
    std::optional<Assignment> cex_settings;
};

ExplanationCheck is_sufficient_explanation(const Model& m, const Assignment& antecedent,
                                           const std::vector<std::string>& network,
                                           const std::string& target, const Rational& value,
                                           const std::optional<Assignment>& context = {},
                                           const Options& opts = {});

// Set-inclusion domination: a's antecedent and network variable sets are
// contained in b's (values play no role). Both must explain the same
// target = value.
bool dominates(const SufficientExplanation& a, const SufficientExplanation& b);

// Every actual sufficient explanation of target=value in (M, u); the
// antecedent values are the solved ones.
std::vector<SufficientExplanation> actual_sufficient_explanations(
    const Model& m, const Assignment& context, const std::string& target,
    const Rational& value, const Options& opts = {});

// The non-dominated ones. Candidates that contain an already-accepted
// explanation are dominated whenever they are explanations at all, so the
// search prunes them without checking sufficiency.
std::vector<SufficientExplanation> good_sufficient_explanations(
    const Model& m, const Assignment& context, const std::string& target,
    const Rational& value, const Options& opts = {});

enum class WitnessMode { Any, Empty, AllOthers };

struct Witness {
    std::vector<std::string> vars;
    Assignment values;  // actual values
};

struct DependenceResult {
    bool holds = false;
    std::vector<Witness> witnesses;  // all of them in mode Any
    std::string refutation;
};

// Counterfactual dependence of target=value on x rather than x_prime, with
// the witness held at its actual values. The dependence set must be
// subset-minimal: no strict nonempty subset (with restricted values) has
// any witness, in every mode.
DependenceResult counterfactually_depends(const Model& m, const Assignment& context,
                                          const Assignment& x, const Assignment& x_prime,
                                          const std::string& target, const Rational& value,
                                          WitnessMode mode, const Options& opts = {});

// Contrast pair plus witness and network: ((X=x,W=w),N) actually explains
// target=value and ((X=x',W=w),N) explains some different value.
struct CounterfactualExplanation {
    Assignment antecedent;  // X = x (actual)
    Assignment contrast;    // X = x'
    Assignment witness;     // W = w (actual)
    std::vector<std::string> network;
    std::string target;
    Rational value;
    Rational counterfactual_value;  // y' != y
};

// All good counterfactual explanations of target=value in (M, u).
// Goodness compares the (X, W, N) set triple; an explanation is good when
// no other explanation has a strictly smaller triple in the product order.
std::vector<CounterfactualExplanation> good_counterfactual_explanations(
    const Model& m, const Assignment& context, const std::string& target,
    const Rational& value, const Options& opts = {});

// Canonical report order: antecedent size, witness size, network size,
// then names and values.
bool canonical_less(const SufficientExplanation& a, const SufficientExplanation& b);
bool canonical_less(const CounterfactualExplanation& a, const CounterfactualExplanation& b);

namespace detail {

struct GoodSuffEntry;  // caches.hpp

// Good actual sufficient explanations at the given solved values, cached
// per (solved endogenous values, target, value).
std::vector<GoodSuffEntry> good_sufficient_idx(const Model& m, const std::vector<int>& solved,
                                               VarId target, Budget& budget, bool memo);

SufficientExplanation entry_to_explanation(const Model& m, const GoodSuffEntry& e, VarId target,
                                           bool actual);

}  // namespace detail

}  // namespace causalex
