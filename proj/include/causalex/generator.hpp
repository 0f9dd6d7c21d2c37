#pragma once

#include <cstdint>
#include <string>

#include "causalex/model.hpp"

namespace causalex {

// splitmix64: the pinned deterministic generator behind every random model
// and theorem report, so runs are reproducible from the seed alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by modulo reduction; bias is irrelevant at the
    // scales used here.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // True with probability ~p.
    bool chance(double p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        return next() < static_cast<std::uint64_t>(p * 18446744073709551615.0);
    }

private:
    std::uint64_t state_;
};

inline constexpr const char* kRngName = "splitmix64";

struct GeneratorConfig {
    std::uint64_t seed = 1;
    int n_endogenous = 3;          // clamped to [1, 6]
    int min_domain = 2;            // domain sizes drawn from [min, max]
    int max_domain = 3;            // clamped to [2, 4]
    enum class Mode { General, Independence } mode = Mode::General;
    double root_prob = 0.5;        // chance a variable is root-form (V = U)
    std::uint64_t max_contexts = 81;  // cap on the exogenous cross product
};

struct GeneratedModel {
    Model model;
    std::string output;  // most-downstream variable, the designated target
};

// Deterministic in the seed. Equations are explicit lookup tables over a
// randomly chosen topological order, serialized to the DSL as nested ite
// chains, so range closure holds by construction. Every variable is either
// root-form (V = U with matching domains) or exogenous-free. Independence
// mode makes all non-output variables root-form and the output a table
// over them, so the induced classifier agrees with the model and no input
// is a parent of another.
GeneratedModel random_model(const GeneratorConfig& config);

}  // namespace causalex
