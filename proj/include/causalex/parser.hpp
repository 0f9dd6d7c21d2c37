#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/diagnostics.hpp"
#include "causalex/model.hpp"

namespace causalex {

// Parses the model-definition DSL and validates the result (acyclicity,
// auto-domain closure, range closure). Grammar sketch:
//
//   model loan
//   exo U1: {0, 50000}          # exogenous, explicit finite domain
//   var X1: {0, 50000} = U1     # endogenous with equation
//   var X2: auto + {45001} = 3/10 * X1 + X3
//
// '#' comments run to end of line; declarations end at newlines.
ModelResult parse_model(const std::string& text, const Options& opts = {});

struct FormulaResult {
    std::optional<CausalFormula> formula;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return formula.has_value(); }
};

// Query-language form "[X2<-45001, X4<-1](Y=1 & !(X1=0))". Variables and
// values are resolved against the model's signature.
FormulaResult parse_formula(const std::string& text, const Model& model);

// Context / partial-assignment literal "U1=75000,U3=2500". Names may be
// exogenous or endogenous depending on the call site; resolution against
// the model happens later.
std::optional<Assignment> parse_assignment(const std::string& text,
                                           std::vector<Diagnostic>& diagnostics);

}  // namespace causalex
