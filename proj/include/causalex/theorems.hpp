#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/generator.hpp"
#include "causalex/model.hpp"

namespace causalex {

enum class TheoremId {
    Prop9,         // direct => strong (some network) => weak sufficiency
    Thm12,         // sufficiency notions collapse under Independence
    Thm16,         // dependence <=> good counterfactual explanation exists
    Thm17,         // dependence witness shapes collapse under Independence
    Prop19,        // witness-subset dominator implies replaceability
    Thm21,         // counterfactual explanations contain actual causes
    Prop24,        // direct cause implies actual cause for some contrast
    Thm25,         // causation notions collapse under Independence
    Observation1,  // intervening on all roots screens off the context
};

std::optional<TheoremId> theorem_from_string(const std::string& name);
std::string theorem_name(TheoremId id);

// Independence-only results default to independence-mode models; running
// them on general-mode models is the negative control and is expected to
// find violations.
GeneratorConfig::Mode default_mode_for(TheoremId id);

struct TheoremFailure {
    int trial = 0;
    std::string model_dsl;  // serialized model, replayable
    std::string context;    // "U1=0,U2=1"; empty for context-free checks
    std::string detail;
};

struct TheoremReport {
    std::string theorem;
    std::uint64_t seed = 0;
    int trials = 0;
    std::string rng = kRngName;
    std::uint64_t failure_count = 0;           // total, even beyond the recording cap
    std::vector<TheoremFailure> failures;      // first kMaxRecordedFailures of them
    int budget_exceeded_trials = 0;            // recorded, not fatal
};

inline constexpr std::size_t kMaxRecordedFailures = 50;

struct CheckConfig {
    GeneratorConfig gen;   // n_endogenous / domains act as upper bounds per trial
    int trials = 200;
    Options opts;
};

// Generates `trials` random models and exhausts the theorem's quantifiers
// on each at desk scale, recording every violation.
TheoremReport check_theorem(TheoremId id, const CheckConfig& config);

}  // namespace causalex
