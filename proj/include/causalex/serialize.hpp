#pragma once

#include <string>

#include "causalex/model.hpp"

namespace causalex {

// Emits DSL source; re-parsing yields a structurally identical model
// (round-trip law). Auto domains are re-declared as 'auto' so the closure
// is recomputed, which is deterministic.
std::string serialize_model(const Model& m);

// "[X2<-45001](Y=1)" form, matching the query grammar.
std::string serialize_formula(const CausalFormula& f);

// Equality up to structure: names, exogeneity, domain contents and order,
// declaration order and equation trees.
bool model_equal(const Model& a, const Model& b);

// "X1=75000,X3=2500" with keys in map (alphabetical) order.
std::string assignment_to_string(const Assignment& a);

}  // namespace causalex
