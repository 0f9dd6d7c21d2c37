#pragma once

#include <string>
#include <vector>

#include "causalex/model.hpp"

namespace causalex {

// Semantic parent relation: Y -> X iff some setting of the other referenced
// variables makes the value of X's equation vary with Y. Computed by
// exhaustive enumeration restricted to the variables the equation actually
// mentions; unreferenced variables cannot create dependence.
struct ParentGraph {
    std::vector<std::vector<VarId>> parents_of;   // per VarId, ascending
    std::vector<std::vector<VarId>> children_of;  // per VarId, ascending

    // (parent, child) name pairs in (parent id, child id) order.
    std::vector<std::pair<std::string, std::string>> edges(const Model& m) const;
};

ParentGraph parents(const Model& m, const Options& opts = {});

std::vector<std::string> ancestors(const Model& m, const std::string& var,
                                   const Options& opts = {});
std::vector<std::string> descendants(const Model& m, const std::string& var,
                                     const Options& opts = {});

using Path = std::vector<std::string>;

// All directed paths from -> to in the parent graph, as vertex sequences.
// paths(X, X) is the singleton trivial path. Deterministic order: depth
// first, children visited in ascending variable id.
std::vector<Path> paths(const Model& m, const std::string& from, const std::string& to,
                        const Options& opts = {});
std::vector<Path> paths(const Model& m, const ParentGraph& g, VarId from, VarId to);

// Endogenous variables whose equation is syntactically V = U for an
// exogenous U. Intervening on all of them makes the context irrelevant.
std::vector<std::string> roots(const Model& m);
std::vector<VarId> root_ids(const Model& m);

}  // namespace causalex
