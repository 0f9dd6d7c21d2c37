#pragma once

#include <json.hpp>

#include "causalex/causation.hpp"
#include "causalex/classifier.hpp"
#include "causalex/explanations.hpp"
#include "causalex/fairness.hpp"
#include "causalex/graph.hpp"
#include "causalex/model.hpp"
#include "causalex/sufficiency.hpp"
#include "causalex/theorems.hpp"

namespace causalex {

// Values are emitted as exact strings ("p" or "p/q"), never floats, so
// payloads are byte-for-byte deterministic.
using json = nlohmann::json;

json to_json(const Assignment& a);
json to_json(const SuffDecision& d);
json to_json(const StrongResult& r);
json to_json(const SufficientExplanation& e);
json to_json(const CounterfactualExplanation& e);
json to_json(const DependenceResult& r);
json to_json(const ReplaceResult& r);
json to_json(const CauseStatement& s);
json to_json(const CauseResult& r);
json to_json(const PathSet& p);
json to_json(const FairnessVerdict& v);
json to_json(const StandardFairnessResult& r);
json to_json(const TheoremReport& r);
json to_json(const UniversalResult& r);

}  // namespace causalex
