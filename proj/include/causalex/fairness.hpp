#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalex/causation.hpp"
#include "causalex/diagnostics.hpp"
#include "causalex/graph.hpp"
#include "causalex/model.hpp"

namespace causalex {

struct PathSet {
    std::vector<Path> paths;  // vertex sequences from the protected variable to the output
    bool contains(const Path& p) const;
};

// Directed paths from `protected_var` to `output` whose every vertex after
// the first lies in the network. The protected variable itself need not be
// in the network (networks exclude the cause variables).
PathSet network_paths(const Model& m, const std::string& protected_var,
                      const std::string& output, const std::vector<std::string>& network,
                      const Options& opts = {});

struct FairnessCertificate {
    Assignment context;
    Rational protected_actual;    // a
    Rational protected_contrast;  // a'
    Rational output_value;        // y
    CauseStatement cause;         // evidence with (W = w, N)
    PathSet network_path_set;     // Pa_N of the evidence network
};

struct FairnessVerdict {
    bool fair = false;
    std::optional<FairnessCertificate> certificate;
};

// Unfair when some context and contrast value make the protected variable
// an actual cause of the output through an evidence network whose paths
// all lie inside the unfair set. All contexts, contrast values and
// certifying evidence explanations are searched; the first certificate in
// (context, contrast, evidence) order is reported. A network containing no
// protected-to-output path passes the inclusion vacuously and counts as
// unfair.
FairnessVerdict is_fair(const Model& m, const std::string& protected_var,
                        const PathSet& unfair_paths, const std::string& output,
                        const Options& opts = {});

struct StandardFairnessResult {
    bool fair = false;
    std::optional<Assignment> certificate_context;
    std::optional<Rational> certificate_contrast;   // the a' that flips the output
    std::optional<Rational> output_before, output_after;
};

// Baseline notion: the output never standardly counterfactually depends on
// the protected variable (empty witness).
StandardFairnessResult standardly_counterfactually_fair(const Model& m,
                                                        const std::string& protected_var,
                                                        const std::string& output,
                                                        const Options& opts = {});

// Sidecar file format: one path per line, "A -> B -> Y". Unknown vertices,
// wrong endpoints and edges missing from the parent graph are rejected.
std::optional<PathSet> parse_path_file(const std::string& text, const Model& m,
                                       const std::string& protected_var,
                                       const std::string& output,
                                       std::vector<Diagnostic>& diagnostics);

}  // namespace causalex
