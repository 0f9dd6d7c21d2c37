#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalex/model.hpp"

namespace causalex {

// Total function h : R(inputs) -> R(output) over a model's endogenous
// variables; inputs + output must cover all of them.
struct Classifier {
    std::vector<std::string> inputs;  // fixed order; table keys follow it
    std::string output;
    std::map<std::vector<Rational>, Rational> table;
};

struct AgreeResult {
    bool agrees = false;
    std::string reason;  // set when the structural condition fails
    // Context whose solved observation disagrees with the table.
    std::optional<Assignment> certificate;
};

// A model agrees with h when (a) every endogenous variable has at most one
// exogenous parent and the output has none, and (b) every realizable
// observation is classified identically: for each context, the solved
// input vector maps to the solved output under h. Unrealizable input
// combinations are not constrained (consistency on observations).
AgreeResult agrees(const Model& m, const Classifier& h, const Options& opts = {});

// No input (endogenous non-output) variable is a parent of another input.
bool independent(const Model& m, const std::string& output, const Options& opts = {});

// Reads h off the model: h(i) is the solved output under the intervention
// inputs <- i, which is context-independent when the output has no
// exogenous parent. Total over the full input cross product.
Classifier induced_classifier(const Model& m, const std::string& output,
                              const Options& opts = {});

}  // namespace causalex
