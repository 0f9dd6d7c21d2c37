#include "causalex/classifier.hpp"

#include <algorithm>

#include "causalex/graph.hpp"

namespace causalex {

AgreeResult agrees(const Model& m, const Classifier& h, const Options& opts) {
    AgreeResult result;
    VarId out_id = m.require(h.output);
    if (m.var(out_id).exogenous) throw DomainError("classifier output must be endogenous");

    // Inputs plus output must be exactly the endogenous variables.
    std::vector<VarId> input_ids;
    for (const auto& name : h.inputs) {
        VarId id = m.require(name);
        if (m.var(id).exogenous || id == out_id) {
            result.reason = "classifier inputs must be endogenous and distinct from the output";
            return result;
        }
        input_ids.push_back(id);
    }
    if (input_ids.size() + 1 != m.endo.size()) {
        result.reason = "classifier variables do not cover the endogenous variables";
        return result;
    }

    Budget budget(opts.budget);
    ParentGraph g = parents(m, opts);

    // Structural condition: at most one exogenous parent anywhere, and an
    // exogenously driven output cannot match any single-valued h.
    for (VarId v : m.endo) {
        int exo_parents = 0;
        for (VarId p : g.parents_of[static_cast<std::size_t>(v)]) {
            if (m.var(p).exogenous) ++exo_parents;
        }
        if (exo_parents > 1) {
            result.reason = "variable '" + m.var(v).name + "' has " +
                            std::to_string(exo_parents) + " exogenous parents";
            return result;
        }
        if (v == out_id && exo_parents > 0) {
            result.reason = "output '" + h.output + "' is exogenously driven";
            return result;
        }
    }

    // Observation consistency over all realizable contexts.
    std::vector<int> solved(m.vars.size(), -1);
    std::vector<Rational> obs(input_ids.size());
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), solved);
        detail::solve_idx(m, nullptr, solved, budget);
        for (std::size_t i = 0; i < input_ids.size(); ++i) {
            const Variable& v = m.var(input_ids[i]);
            obs[i] = v.domain.at(solved[static_cast<std::size_t>(input_ids[i])]);
        }
        auto it = h.table.find(obs);
        const Rational& y =
            m.var(out_id).domain.at(solved[static_cast<std::size_t>(out_id)]);
        if (it == h.table.end() || it->second != y) {
            result.reason = it == h.table.end() ? "classifier table is not total" : "";
            result.certificate = detail::to_assignment(m, m.exo, solved);
            return result;
        }
    }
    result.agrees = true;
    return result;
}

bool independent(const Model& m, const std::string& output, const Options& opts) {
    VarId out_id = m.require(output);
    ParentGraph g = parents(m, opts);
    for (VarId v : m.endo) {
        if (v == out_id) continue;
        for (VarId p : g.parents_of[static_cast<std::size_t>(v)]) {
            if (!m.var(p).exogenous && p != out_id) return false;
        }
    }
    return true;
}

Classifier induced_classifier(const Model& m, const std::string& output, const Options& opts) {
    Classifier h;
    h.output = output;
    VarId out_id = m.require(output);
    std::vector<VarId> input_ids;
    for (VarId v : m.endo) {
        if (v == out_id) continue;
        input_ids.push_back(v);
        h.inputs.push_back(m.var(v).name);
    }

    Budget budget(opts.budget);
    std::vector<int> solved(m.vars.size(), -1);
    // Fixed arbitrary context; intervening on every input screens the
    // output off from it whenever the output has no exogenous parent.
    std::vector<int> ctx(m.exo.size(), 0);
    detail::Overlay ov(m.vars.size());
    for (detail::TupleIter in(m, input_ids); !in.done(); in.advance()) {
        std::vector<Rational> key(input_ids.size());
        for (std::size_t i = 0; i < input_ids.size(); ++i) {
            ov.set(input_ids[i], in.current()[i]);
            key[i] = m.var(input_ids[i]).domain.at(in.current()[i]);
        }
        detail::seed_context(m, ctx, solved);
        detail::solve_idx(m, &ov, solved, budget);
        h.table[key] = m.var(out_id).domain.at(solved[static_cast<std::size_t>(out_id)]);
    }
    return h;
}

}  // namespace causalex
