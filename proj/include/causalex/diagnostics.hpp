#pragma once

#include <string>
#include <vector>

namespace causalex {

// Positioned message attached to a rejected model or formula source.
// Every rejection carries at least one of these; there is no silent
// acceptance of invalid input.
struct Diagnostic {
    enum class Severity { Error, Warning };
    // Parse covers lexical/grammatical/name errors; Validate covers
    // model-level semantic checks (cycles, range closure, domains).
    enum class Phase { Parse, Validate };

    Severity severity = Severity::Error;
    Phase phase = Phase::Parse;
    std::string message;
    int line = 0;    // 1-based; 0 when no position applies
    int column = 0;  // 1-based
    std::string span;  // offending source fragment, possibly empty

    std::string render() const {
        std::string out = std::to_string(line) + ":" + std::to_string(column) + ": ";
        out += severity == Severity::Error ? "error: " : "warning: ";
        out += message;
        if (!span.empty()) out += " near '" + span + "'";
        return out;
    }
};

inline bool has_error(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) {
        if (d.severity == Diagnostic::Severity::Error) return true;
    }
    return false;
}

}  // namespace causalex
