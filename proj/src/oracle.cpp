#include "causalex/oracle.hpp"

#include <algorithm>

#include "causalex/detail/subsets.hpp"
#include "causalex/graph.hpp"

namespace causalex::oracle {

namespace {

using detail::is_subset;
using detail::set_minus;
using detail::set_union;
using detail::subsets_by_size;
using detail::TupleIter;

std::vector<std::string> names_of(const Model& m, const std::vector<VarId>& ids) {
    std::vector<std::string> out;
    for (VarId v : ids) out.push_back(m.var(v).name);
    return out;
}

std::vector<int> solve_context(const Model& m, const Assignment& context, Budget& budget) {
    if (context.size() != m.exo.size()) {
        throw DomainError("context must assign exactly the exogenous variables");
    }
    std::vector<int> out(m.vars.size(), -1);
    for (const auto& [name, value] : context) {
        VarId id = m.require(name);
        int idx = m.var(id).domain.index_of(value);
        if (!m.var(id).exogenous || idx < 0) {
            throw DomainError("bad context entry '" + name + "'");
        }
        out[static_cast<std::size_t>(id)] = idx;
    }
    detail::solve_idx(m, nullptr, out, budget);
    return out;
}

VarValues values_at(const std::vector<int>& solved, const std::vector<VarId>& vars) {
    VarValues vv;
    for (VarId v : vars) vv.set(v, solved[static_cast<std::size_t>(v)]);
    return vv;
}

bool satisfies(const std::vector<int>& solved, const VarValues& want) {
    for (std::size_t i = 0; i < want.vars.size(); ++i) {
        if (solved[static_cast<std::size_t>(want.vars[i])] != want.vals[i]) return false;
    }
    return true;
}

// Literal Def-4 loop: for all settings of the remaining endogenous
// variables and all contexts, the antecedent forces the consequent.
bool direct_raw(const Model& m, const VarValues& antecedent, const VarValues& consequent,
                Budget& budget, VarValues* cex_settings = nullptr,
                std::vector<int>* cex_context = nullptr) {
    std::vector<VarId> free_vars;
    for (VarId v : m.endo) {
        if (antecedent.value_of(v) < 0 && consequent.value_of(v) < 0) free_vars.push_back(v);
    }
    detail::Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < antecedent.vars.size(); ++i) {
        ov.set(antecedent.vars[i], antecedent.vals[i]);
    }
    std::vector<int> solved(m.vars.size(), -1);
    for (TupleIter c(m, free_vars); !c.done(); c.advance()) {
        for (std::size_t i = 0; i < free_vars.size(); ++i) ov.set(free_vars[i], c.current()[i]);
        for (TupleIter u(m, m.exo); !u.done(); u.advance()) {
            detail::seed_context(m, u.current(), solved);
            detail::solve_idx(m, &ov, solved, budget);
            if (!satisfies(solved, consequent)) {
                if (cex_settings != nullptr) {
                    for (std::size_t i = 0; i < free_vars.size(); ++i) {
                        cex_settings->set(free_vars[i], c.current()[i]);
                    }
                }
                if (cex_context != nullptr) *cex_context = u.current();
                return false;
            }
        }
    }
    return true;
}

// Literal Def-5 search: some network value vector extending the target
// values is directly forced. Candidates are enumerated outright.
std::optional<VarValues> strong_raw(const Model& m, const VarValues& antecedent,
                                    const std::vector<VarId>& network, const VarValues& extend,
                                    Budget& budget) {
    for (TupleIter n(m, network); !n.done(); n.advance()) {
        VarValues candidate;
        for (std::size_t i = 0; i < network.size(); ++i) candidate.set(network[i], n.current()[i]);
        bool ok = true;
        for (std::size_t i = 0; i < extend.vars.size(); ++i) {
            if (candidate.value_of(extend.vars[i]) != extend.vals[i]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (direct_raw(m, antecedent, candidate, budget)) return candidate;
    }
    return std::nullopt;
}

struct RawExplanation {
    std::vector<VarId> antecedent;  // ascending
    std::vector<VarId> network;     // ascending, contains target
    VarValues network_values;
};

// Every actual sufficient explanation at the solved values, no pruning.
std::vector<RawExplanation> all_actual_explanations(const Model& m,
                                                    const std::vector<int>& solved, VarId y,
                                                    Budget& budget) {
    int y_idx = solved[static_cast<std::size_t>(y)];
    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (v != y) pool.push_back(v);
    }
    VarValues extend;
    extend.set(y, y_idx);

    std::vector<RawExplanation> out;
    for (const auto& xs : subsets_by_size(pool)) {
        VarValues ant = values_at(solved, xs);
        for (const auto& nrest : subsets_by_size(set_minus(pool, xs))) {
            std::vector<VarId> net = nrest;
            net.insert(std::lower_bound(net.begin(), net.end(), y), y);
            auto n = strong_raw(m, ant, net, extend, budget);
            if (n) out.push_back({xs, net, *n});
        }
    }
    return out;
}

std::vector<RawExplanation> good_filter(std::vector<RawExplanation> all) {
    std::vector<RawExplanation> out;
    for (const auto& e : all) {
        bool dominated = false;
        for (const auto& other : all) {
            if (other.antecedent == e.antecedent && other.network == e.network) continue;
            if (is_subset(other.antecedent, e.antecedent) && is_subset(other.network, e.network)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const RawExplanation& a, const RawExplanation& b) {
        if (a.antecedent.size() != b.antecedent.size()) {
            return a.antecedent.size() < b.antecedent.size();
        }
        if (a.network.size() != b.network.size()) return a.network.size() < b.network.size();
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        return a.network < b.network;
    });
    return out;
}

SufficientExplanation to_public(const Model& m, const RawExplanation& e,
                                const std::vector<int>& solved, VarId y) {
    SufficientExplanation out;
    out.antecedent = detail::to_assignment(m, values_at(solved, e.antecedent));
    out.network = names_of(m, e.network);
    out.target = m.var(y).name;
    out.target_value = m.var(y).domain.at(e.network_values.value_of(y));
    out.network_values = detail::to_assignment(m, e.network_values);
    out.actual = true;
    out.direct = e.network.size() == 1;
    return out;
}

VarId target_id(const Model& m, const std::string& target, const Rational& value, int& y_idx) {
    VarId y = m.require(target);
    y_idx = m.var(y).domain.index_of(value);
    if (m.var(y).exogenous || y_idx < 0) throw DomainError("bad target '" + target + "'");
    return y;
}

}  // namespace

SuffDecision weakly_sufficient(const Model& m, const Assignment& antecedent,
                               const Assignment& consequent, const Options& opts) {
    VarValues ant = detail::to_var_values(m, antecedent, true);
    VarValues con = detail::to_var_values(m, consequent, true);
    Budget budget(opts.budget);
    detail::Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < ant.vars.size(); ++i) ov.set(ant.vars[i], ant.vals[i]);
    std::vector<int> solved(m.vars.size(), -1);
    for (TupleIter u(m, m.exo); !u.done(); u.advance()) {
        detail::seed_context(m, u.current(), solved);
        detail::solve_idx(m, &ov, solved, budget);
        if (!satisfies(solved, con)) {
            SuffDecision r;
            r.holds = false;
            r.cex_context = detail::to_assignment(m, m.exo, solved);
            return r;
        }
    }
    return SuffDecision{true, std::nullopt, std::nullopt};
}

SuffDecision directly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent, const Options& opts) {
    VarValues ant = detail::to_var_values(m, antecedent, true);
    VarValues con = detail::to_var_values(m, consequent, true);
    Budget budget(opts.budget);
    VarValues cex_settings;
    std::vector<int> cex_context;
    SuffDecision r;
    r.holds = direct_raw(m, ant, con, budget, &cex_settings, &cex_context);
    if (!r.holds) {
        r.cex_settings = detail::to_assignment(m, cex_settings);
        std::vector<int> full(m.vars.size(), 0);
        detail::seed_context(m, cex_context, full);
        r.cex_context = detail::to_assignment(m, m.exo, full);
    }
    return r;
}

StrongResult strongly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent,
                                 const std::vector<std::string>& network, const Options& opts) {
    VarValues ant = detail::to_var_values(m, antecedent, true);
    VarValues con = detail::to_var_values(m, consequent, true);
    std::vector<VarId> net;
    for (const auto& n : network) net.push_back(m.require(n));
    std::sort(net.begin(), net.end());
    Budget budget(opts.budget);
    auto n = strong_raw(m, ant, net, con, budget);
    StrongResult r;
    r.holds = n.has_value();
    if (n) r.network_values = detail::to_assignment(m, *n);
    return r;
}

std::vector<SufficientExplanation> good_sufficient_explanations(const Model& m,
                                                                const Assignment& context,
                                                                const std::string& target,
                                                                const Rational& value,
                                                                const Options& opts) {
    int y_idx = -1;
    VarId y = target_id(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_context(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }
    std::vector<SufficientExplanation> out;
    for (const auto& e : good_filter(all_actual_explanations(m, solved, y, budget))) {
        out.push_back(to_public(m, e, solved, y));
    }
    return out;
}

DependenceResult counterfactually_depends(const Model& m, const Assignment& context,
                                          const Assignment& x, const Assignment& x_prime,
                                          const std::string& target, const Rational& value,
                                          WitnessMode mode, const Options& opts) {
    int y_idx = -1;
    VarId y = target_id(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_context(m, context, budget);

    VarValues xv = detail::to_var_values(m, x, true);
    VarValues xpv = detail::to_var_values(m, x_prime, true);

    auto flips = [&](const VarValues& contrast, const std::vector<VarId>& witness) {
        detail::Overlay ov(m.vars.size());
        for (std::size_t i = 0; i < contrast.vars.size(); ++i) {
            ov.set(contrast.vars[i], contrast.vals[i]);
        }
        for (VarId w : witness) ov.set(w, solved[static_cast<std::size_t>(w)]);
        std::vector<int> run(m.vars.size(), -1);
        for (std::size_t i = 0; i < m.exo.size(); ++i) {
            run[static_cast<std::size_t>(m.exo[i])] =
                solved[static_cast<std::size_t>(m.exo[i])];
        }
        detail::solve_idx(m, &ov, run, budget);
        return run[static_cast<std::size_t>(y)] != y_idx;
    };

    std::vector<VarId> others;
    for (VarId v : m.endo) {
        if (v != y && xv.value_of(v) < 0) others.push_back(v);
    }

    // Minimality: no strict nonempty restriction of the contrast has any
    // witness at all.
    bool minimal = true;
    if (xv.vars.size() > 1) {
        std::vector<VarId> all;
        for (VarId v : m.endo) {
            if (v != y) all.push_back(v);
        }
        for (const auto& sub : subsets_by_size(xv.vars)) {
            if (sub.empty() || sub.size() == xv.vars.size()) continue;
            VarValues restricted;
            for (VarId v : sub) restricted.set(v, xpv.value_of(v));
            bool found = false;
            for (const auto& w : subsets_by_size(set_minus(all, sub))) {
                if (flips(restricted, w)) {
                    found = true;
                    break;
                }
            }
            if (found) {
                minimal = false;
                break;
            }
        }
    }

    DependenceResult out;
    if (!minimal) {
        out.refutation = "the dependence set is not minimal: a strict subset has a witness";
        return out;
    }
    auto push = [&](const std::vector<VarId>& w) {
        Witness wit;
        wit.vars = names_of(m, w);
        wit.values = detail::to_assignment(m, values_at(solved, w));
        out.witnesses.push_back(std::move(wit));
    };
    switch (mode) {
        case WitnessMode::Empty:
            if (flips(xpv, {})) push({});
            break;
        case WitnessMode::AllOthers:
            if (flips(xpv, others)) push(others);
            break;
        case WitnessMode::Any:
            for (const auto& w : subsets_by_size(others)) {
                if (flips(xpv, w)) push(w);
            }
            break;
    }
    out.holds = !out.witnesses.empty();
    if (!out.holds) out.refutation = "no witness makes the target change";
    return out;
}

std::vector<CounterfactualExplanation> good_counterfactual_explanations(const Model& m,
                                                                        const Assignment& context,
                                                                        const std::string& target,
                                                                        const Rational& value,
                                                                        const Options& opts) {
    int y_idx = -1;
    VarId y = target_id(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_context(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }

    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (v != y) pool.push_back(v);
    }

    struct Raw {
        std::vector<VarId> xs, ws, net;
        VarValues contrast;
        int y_prime;
    };
    std::vector<Raw> found;

    VarValues extend_y;
    extend_y.set(y, y_idx);

    for (const auto& xs : subsets_by_size(pool)) {
        if (xs.empty()) continue;
        for (const auto& ws : subsets_by_size(set_minus(pool, xs))) {
            for (const auto& nrest : subsets_by_size(set_minus(set_minus(pool, xs), ws))) {
                std::vector<VarId> net = nrest;
                net.insert(std::lower_bound(net.begin(), net.end(), y), y);
                VarValues actual_ant = values_at(solved, set_union(xs, ws));
                if (!strong_raw(m, actual_ant, net, extend_y, budget)) continue;

                std::vector<std::vector<int>> alts(xs.size());
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    int actual_idx = solved[static_cast<std::size_t>(xs[i])];
                    for (int k = 0; k < static_cast<int>(m.var(xs[i]).domain.size()); ++k) {
                        if (k != actual_idx) alts[i].push_back(k);
                    }
                }
                if (std::any_of(alts.begin(), alts.end(),
                                [](const auto& a) { return a.empty(); })) {
                    continue;
                }
                std::vector<std::size_t> pick(xs.size(), 0);
                while (true) {
                    VarValues contrast_ant = values_at(solved, ws);
                    VarValues contrast_only;
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        contrast_ant.set(xs[i], alts[i][pick[i]]);
                        contrast_only.set(xs[i], alts[i][pick[i]]);
                    }
                    // y' is whatever constant the contrast side forces.
                    for (TupleIter n(m, net); !n.done(); n.advance()) {
                        VarValues candidate;
                        for (std::size_t i = 0; i < net.size(); ++i) {
                            candidate.set(net[i], n.current()[i]);
                        }
                        if (candidate.value_of(y) == y_idx) continue;
                        if (direct_raw(m, contrast_ant, candidate, budget)) {
                            found.push_back({xs, ws, net, contrast_only,
                                             candidate.value_of(y)});
                            break;
                        }
                    }
                    std::size_t i = xs.size();
                    bool wrapped = true;
                    while (i-- > 0) {
                        if (++pick[i] < alts[i].size()) {
                            wrapped = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (wrapped) break;
                }
            }
        }
    }

    // Goodness: beaten either by a same-contrast explanation with smaller
    // witness and network, or by one whose contrast pair is a strict
    // restriction of this one.
    std::vector<CounterfactualExplanation> out;
    for (const auto& e : found) {
        bool dominated = false;
        for (const auto& other : found) {
            if (other.xs == e.xs && other.contrast == e.contrast) {
                if (other.ws == e.ws && other.net == e.net) continue;
                if (is_subset(other.ws, e.ws) && is_subset(other.net, e.net)) {
                    dominated = true;
                    break;
                }
            } else if (other.xs.size() < e.xs.size() && is_subset(other.xs, e.xs)) {
                bool restricted = true;
                for (std::size_t i = 0; i < other.xs.size(); ++i) {
                    if (e.contrast.value_of(other.xs[i]) != other.contrast.vals[i]) {
                        restricted = false;
                        break;
                    }
                }
                if (restricted) {
                    dominated = true;
                    break;
                }
            }
        }
        if (dominated) continue;
        CounterfactualExplanation ce;
        ce.antecedent = detail::to_assignment(m, values_at(solved, e.xs));
        ce.contrast = detail::to_assignment(m, e.contrast);
        ce.witness = detail::to_assignment(m, values_at(solved, e.ws));
        ce.network = names_of(m, e.net);
        ce.target = m.var(y).name;
        ce.value = value;
        ce.counterfactual_value = m.var(y).domain.at(e.y_prime);
        out.push_back(std::move(ce));
    }
    std::sort(out.begin(), out.end(),
              [](const CounterfactualExplanation& a, const CounterfactualExplanation& b) {
                  return canonical_less(a, b);
              });
    return out;
}

ReplaceResult can_replace(const Model& m, const SufficientExplanation& explanation,
                          const Assignment& x_part, const Assignment& x_prime,
                          const Options& opts) {
    VarId y = m.require(explanation.target);
    int y_idx = m.var(y).domain.index_of(explanation.target_value);
    VarValues ant = detail::to_var_values(m, explanation.antecedent, true);
    VarValues xv = detail::to_var_values(m, x_part, true);
    VarValues xp = detail::to_var_values(m, x_prime, true);
    VarValues contrast_ant = ant;
    for (std::size_t i = 0; i < xp.vars.size(); ++i) contrast_ant.set(xp.vars[i], xp.vals[i]);
    (void)xv;

    std::vector<VarId> net_rest;
    for (const auto& name : explanation.network) {
        VarId v = m.require(name);
        if (v != y) net_rest.push_back(v);
    }
    std::sort(net_rest.begin(), net_rest.end());

    VarValues extend_y;
    extend_y.set(y, y_idx);
    Budget budget(opts.budget);
    for (const auto& sub : subsets_by_size(net_rest)) {
        std::vector<VarId> candidate = sub;
        candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), y), y);
        if (strong_raw(m, contrast_ant, candidate, extend_y, budget)) {
            ReplaceResult r;
            r.can = true;
            r.certificate = names_of(m, candidate);
            return r;
        }
    }
    return ReplaceResult{false, {}};
}

namespace {

CauseResult cause_raw(const Model& m, const Assignment& context, const Assignment& x,
                      const std::optional<Assignment>& x_prime, const std::string& target,
                      const Rational& value, bool optimal, bool direct_only,
                      const Options& opts) {
    int y_idx = -1;
    VarId y = target_id(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_context(m, context, budget);
    VarValues xv = detail::to_var_values(m, x, true);

    std::vector<RawExplanation> goods =
        good_filter(all_actual_explanations(m, solved, y, budget));

    CauseResult out;
    for (const auto& e : goods) {
        if (!is_subset(xv.vars, e.antecedent)) continue;
        if (direct_only && e.network.size() != 1) continue;
        bool ok = false;
        if (direct_only) {
            ok = true;
        } else {
            SufficientExplanation pub = to_public(m, e, solved, y);
            if (optimal) {
                ok = true;
                // Every tuple over R(X) other than the actual one can
                // attempt the replacement (tuples keeping some variables
                // actual stand in for replacements of a part of X).
                std::vector<int> pick(xv.vars.size(), 0);
                while (ok) {
                    VarValues alt;
                    bool all_actual = true;
                    for (std::size_t i = 0; i < xv.vars.size(); ++i) {
                        alt.set(xv.vars[i], pick[i]);
                        if (pick[i] != xv.vals[i]) all_actual = false;
                    }
                    if (!all_actual &&
                        causalex::oracle::can_replace(m, pub, x, detail::to_assignment(m, alt),
                                                      opts)
                            .can) {
                        ok = false;
                    }
                    std::size_t i = xv.vars.size();
                    bool wrapped = true;
                    while (i-- > 0) {
                        if (++pick[i] < static_cast<int>(m.var(xv.vars[i]).domain.size())) {
                            wrapped = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (wrapped) break;
                }
            } else {
                ok = !causalex::oracle::can_replace(m, pub, x, *x_prime, opts).can;
            }
        }
        if (!ok) continue;
        CauseStatement st;
        st.cause = x;
        if (x_prime) st.contrast = *x_prime;
        st.target = target;
        st.target_value = value;
        st.evidence = to_public(m, e, solved, y);
        st.witness = detail::to_assignment(m, values_at(solved, set_minus(e.antecedent, xv.vars)));
        if (!out.holds) {
            out.holds = true;
            out.statement = st;
            if (!opts.all_evidence) return out;
        }
        out.all.push_back(std::move(st));
    }
    if (!out.holds) out.refutation = "no certifying good explanation";
    return out;
}

}  // namespace

CauseResult actual_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const Assignment& x_prime, const std::string& target,
                         const Rational& value, const Options& opts) {
    return cause_raw(m, context, x, x_prime, target, value, false, false, opts);
}

CauseResult optimal_cause(const Model& m, const Assignment& context, const Assignment& x,
                          const std::string& target, const Rational& value,
                          const Options& opts) {
    return cause_raw(m, context, x, std::nullopt, target, value, true, false, opts);
}

CauseResult direct_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const std::string& target, const Rational& value,
                         const Options& opts) {
    return cause_raw(m, context, x, std::nullopt, target, value, false, true, opts);
}

FairnessVerdict is_fair(const Model& m, const std::string& protected_var,
                        const PathSet& unfair_paths, const std::string& output,
                        const Options& opts) {
    VarId a = m.require(protected_var);
    VarId y = m.require(output);
    Budget budget(opts.budget);
    Options search = opts;
    search.all_evidence = true;

    std::vector<int> solved(m.vars.size(), -1);
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), solved);
        detail::solve_idx(m, nullptr, solved, budget);
        Assignment context = detail::to_assignment(m, m.exo, solved);
        int a_actual = solved[static_cast<std::size_t>(a)];
        Assignment xa{{protected_var, m.var(a).domain.at(a_actual)}};
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        for (int alt = 0; alt < static_cast<int>(m.var(a).domain.size()); ++alt) {
            if (alt == a_actual) continue;
            Assignment xp{{protected_var, m.var(a).domain.at(alt)}};
            CauseResult r = causalex::oracle::actual_cause(m, context, xa, xp, output, y_val, search);
            if (!r.holds) continue;
            for (const CauseStatement& st : r.all) {
                PathSet pn = network_paths(m, protected_var, output, st.evidence.network);
                bool inside = true;
                for (const Path& p : pn.paths) {
                    if (!unfair_paths.contains(p)) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) continue;
                FairnessVerdict verdict;
                verdict.fair = false;
                FairnessCertificate cert;
                cert.context = context;
                cert.protected_actual = m.var(a).domain.at(a_actual);
                cert.protected_contrast = m.var(a).domain.at(alt);
                cert.output_value = y_val;
                cert.cause = st;
                cert.network_path_set = pn;
                verdict.certificate = std::move(cert);
                return verdict;
            }
        }
    }
    return FairnessVerdict{true, std::nullopt};
}

StandardFairnessResult standardly_counterfactually_fair(const Model& m,
                                                        const std::string& protected_var,
                                                        const std::string& output,
                                                        const Options& opts) {
    VarId a = m.require(protected_var);
    VarId y = m.require(output);
    Budget budget(opts.budget);
    std::vector<int> solved(m.vars.size(), -1);
    std::vector<int> run(m.vars.size(), -1);
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), solved);
        detail::solve_idx(m, nullptr, solved, budget);
        for (int alt = 0; alt < static_cast<int>(m.var(a).domain.size()); ++alt) {
            if (alt == solved[static_cast<std::size_t>(a)]) continue;
            detail::Overlay ov(m.vars.size());
            ov.set(a, alt);
            detail::seed_context(m, ctx.current(), run);
            detail::solve_idx(m, &ov, run, budget);
            if (run[static_cast<std::size_t>(y)] != solved[static_cast<std::size_t>(y)]) {
                StandardFairnessResult r;
                r.fair = false;
                r.certificate_context = detail::to_assignment(m, m.exo, solved);
                r.certificate_contrast = m.var(a).domain.at(alt);
                r.output_before = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
                r.output_after = m.var(y).domain.at(run[static_cast<std::size_t>(y)]);
                return r;
            }
        }
    }
    StandardFairnessResult r;
    r.fair = true;
    return r;
}

}  // namespace causalex::oracle
