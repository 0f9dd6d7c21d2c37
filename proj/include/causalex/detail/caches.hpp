#pragma once

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "causalex/model.hpp"

namespace causalex {

namespace detail {

// Direct sufficiency is quantified over all contexts and all settings of
// the remaining variables, so its verdict is model-global; the cache key is
// just (antecedent, consequent).
struct DirectVerdict {
    bool holds = false;
    VarValues cex_settings;         // falsifying C=c (lexicographically first)
    std::vector<int> cex_context;   // falsifying context tuple over m.exo
};

struct GoodSuffEntry {
    std::vector<VarId> antecedent;      // X, ascending ids (values are the actual ones)
    std::vector<VarId> network;         // N including the target
    VarValues network_values;           // the forced n over N
};

// Key: (solved endogenous values, target var, target value index). Two
// contexts with identical solved values share their explanation sets.
using GoodSuffKey = std::tuple<std::vector<int>, VarId, int>;

}  // namespace detail

// Grow-only caches attached to a model instance. Writers hold the mutex;
// duplicate computation is harmless because results are deterministic.
struct ModelCaches {
    std::mutex mu;
    std::map<std::pair<VarValues, VarValues>, detail::DirectVerdict> direct_sufficiency;
    std::map<detail::GoodSuffKey, std::vector<detail::GoodSuffEntry>> good_sufficient;
};

}  // namespace causalex
