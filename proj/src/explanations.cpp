#include "causalex/explanations.hpp"

#include <algorithm>
#include <tuple>

#include "causalex/detail/caches.hpp"
#include "causalex/detail/subsets.hpp"

namespace causalex {

namespace {

using detail::GoodSuffEntry;

std::vector<std::string> names_of(const Model& m, const std::vector<VarId>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (VarId v : ids) out.push_back(m.var(v).name);
    return out;
}

// Solve the pristine model at a context given as a public Assignment.
std::vector<int> solve_full(const Model& m, const Assignment& context, Budget& budget) {
    if (context.size() != m.exo.size()) {
        throw DomainError("context must assign exactly the exogenous variables");
    }
    std::vector<int> out(m.vars.size(), -1);
    for (const auto& [name, value] : context) {
        VarId id = m.require(name);
        if (!m.var(id).exogenous) {
            throw DomainError("context variable '" + name + "' is not exogenous");
        }
        int idx = m.var(id).domain.index_of(value);
        if (idx < 0) {
            throw DomainError("value " + value.str() + " is not in the domain of '" + name + "'");
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

VarId checked_target(const Model& m, const std::string& target, const Rational& value,
                     int& value_idx) {
    VarId y = m.require(target);
    if (m.var(y).exogenous) throw DomainError("target '" + target + "' must be endogenous");
    value_idx = m.var(y).domain.index_of(value);
    if (value_idx < 0) {
        throw DomainError("value " + value.str() + " is not in the domain of '" + target + "'");
    }
    return y;
}

// Canonical report order: antecedent size, network size, then names.
void sort_entries(std::vector<GoodSuffEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const GoodSuffEntry& a, const GoodSuffEntry& b) {
        if (a.antecedent.size() != b.antecedent.size()) {
            return a.antecedent.size() < b.antecedent.size();
        }
        if (a.network.size() != b.network.size()) return a.network.size() < b.network.size();
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        return a.network < b.network;
    });
}

}  // namespace

namespace detail {

SufficientExplanation entry_to_explanation(const Model& m, const GoodSuffEntry& e, VarId target,
                                           bool actual) {
    // Antecedent values are context-dependent; callers fill `antecedent`
    // from the solved values they hold.
    SufficientExplanation out;
    out.network = names_of(m, e.network);
    out.target = m.var(target).name;
    int y_idx = e.network_values.value_of(target);
    out.target_value = m.var(target).domain.at(y_idx);
    out.network_values = to_assignment(m, e.network_values);
    out.actual = actual;
    out.direct = e.network.size() == 1;
    return out;
}

std::vector<GoodSuffEntry> good_sufficient_idx(const Model& m, const std::vector<int>& solved,
                                               VarId target, Budget& budget, bool memo) {
    int y_idx = solved[static_cast<std::size_t>(target)];
    GoodSuffKey key;
    if (memo) {
        std::vector<int> endo_vals;
        endo_vals.reserve(m.endo.size());
        for (VarId v : m.endo) endo_vals.push_back(solved[static_cast<std::size_t>(v)]);
        key = GoodSuffKey(std::move(endo_vals), target, y_idx);
        std::lock_guard<std::mutex> lock(m.caches().mu);
        auto it = m.caches().good_sufficient.find(key);
        if (it != m.caches().good_sufficient.end()) return it->second;
    }

    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (v != target) pool.push_back(v);
    }

    std::vector<GoodSuffEntry> accepted;
    auto dominated_by_accepted = [&](const std::vector<VarId>& xs,
                                     const std::vector<VarId>& net) {
        for (const GoodSuffEntry& e : accepted) {
            if (e.antecedent == xs && e.network == net) continue;
            if (is_subset(e.antecedent, xs) && is_subset(e.network, net)) return true;
        }
        return false;
    };

    // Antecedent sets by ascending size; networks likewise. A dominator is
    // never visited after something it dominates, so pruning against the
    // accepted list is sound.
    for (const auto& xs : subsets_by_size(pool)) {
        VarValues ant = values_at(solved, xs);
        std::vector<VarId> rest = set_minus(pool, xs);
        for (const auto& nrest : subsets_by_size(rest)) {
            std::vector<VarId> net = nrest;
            net.insert(std::lower_bound(net.begin(), net.end(), target), target);
            if (dominated_by_accepted(xs, net)) continue;
            VarValues want;
            want.set(target, y_idx);
            StrongOutcome sv = strong_values(m, ant, net, budget, memo, &want);
            if (!sv.holds) continue;
            GoodSuffEntry e;
            e.antecedent = xs;
            e.network = net;
            e.network_values = sv.network_values;
            accepted.push_back(std::move(e));
        }
    }
    sort_entries(accepted);

    if (memo) {
        std::lock_guard<std::mutex> lock(m.caches().mu);
        m.caches().good_sufficient.emplace(std::move(key), accepted);
    }
    return accepted;
}

}  // namespace detail

namespace {

std::vector<std::string> assignment_keys(const Assignment& a) {
    std::vector<std::string> out;
    for (const auto& [k, v] : a) out.push_back(k);
    return out;
}

std::vector<std::string> assignment_values(const Assignment& a) {
    std::vector<std::string> out;
    for (const auto& [k, v] : a) out.push_back(v.str());
    return out;
}

}  // namespace

bool canonical_less(const SufficientExplanation& a, const SufficientExplanation& b) {
    auto key = [](const SufficientExplanation& e) {
        return std::make_tuple(e.antecedent.size(), e.network.size(),
                               assignment_keys(e.antecedent), e.network,
                               assignment_values(e.antecedent));
    };
    return key(a) < key(b);
}

bool canonical_less(const CounterfactualExplanation& a, const CounterfactualExplanation& b) {
    auto key = [](const CounterfactualExplanation& e) {
        return std::make_tuple(e.antecedent.size(), e.witness.size(), e.network.size(),
                               assignment_keys(e.antecedent), assignment_keys(e.witness),
                               e.network, assignment_values(e.contrast));
    };
    return key(a) < key(b);
}

ExplanationCheck is_sufficient_explanation(const Model& m, const Assignment& antecedent,
                                           const std::vector<std::string>& network,
                                           const std::string& target, const Rational& value,
                                           const std::optional<Assignment>& context,
                                           const Options& opts) {
    int y_idx = -1;
    checked_target(m, target, value, y_idx);
    Assignment consequent{{target, value}};
    StrongResult sv = strongly_sufficient(m, antecedent, consequent, network, opts);
    ExplanationCheck out;
    out.holds = sv.holds;
    if (!sv.holds) {
        out.cex_context = sv.cex_context;
        out.cex_settings = sv.cex_settings;
        return out;
    }
    SufficientExplanation e;
    e.antecedent = antecedent;
    e.network = network;
    // Normalize network order to declaration order and ensure the target
    // is listed (it is always part of the stored network).
    {
        VarValues nv = detail::to_var_values(m, sv.network_values, true);
        e.network = names_of(m, nv.vars);
    }
    e.target = target;
    e.target_value = value;
    e.network_values = sv.network_values;
    e.direct = e.network.size() == 1;
    if (context.has_value()) {
        Budget budget(opts.budget);
        std::vector<int> solved = solve_full(m, *context, budget);
        e.actual = true;
        for (const auto& [name, val] : antecedent) {
            VarId id = m.require(name);
            if (m.var(id).domain.index_of(val) != solved[static_cast<std::size_t>(id)]) {
                e.actual = false;
                break;
            }
        }
    }
    out.explanation = std::move(e);
    return out;
}

bool dominates(const SufficientExplanation& a, const SufficientExplanation& b) {
    if (a.target != b.target || a.target_value != b.target_value) return false;
    for (const auto& [name, value] : a.antecedent) {
        if (b.antecedent.find(name) == b.antecedent.end()) return false;
    }
    for (const auto& name : a.network) {
        if (std::find(b.network.begin(), b.network.end(), name) == b.network.end()) return false;
    }
    return true;
}

namespace {

std::vector<SufficientExplanation> explanations_at(const Model& m, const Assignment& context,
                                                   const std::string& target,
                                                   const Rational& value, const Options& opts,
                                                   bool only_good) {
    int y_idx = -1;
    VarId y = checked_target(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_full(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }

    std::vector<GoodSuffEntry> entries;
    if (only_good) {
        entries = detail::good_sufficient_idx(m, solved, y, budget, opts.memo);
    } else {
        std::vector<VarId> pool;
        for (VarId v : m.endo) {
            if (v != y) pool.push_back(v);
        }
        for (const auto& xs : detail::subsets_by_size(pool)) {
            VarValues ant = values_at(solved, xs);
            std::vector<VarId> rest = detail::set_minus(pool, xs);
            for (const auto& nrest : detail::subsets_by_size(rest)) {
                std::vector<VarId> net = nrest;
                net.insert(std::lower_bound(net.begin(), net.end(), y), y);
                VarValues want;
                want.set(y, y_idx);
                detail::StrongOutcome sv =
                    detail::strong_values(m, ant, net, budget, opts.memo, &want);
                if (!sv.holds) continue;
                GoodSuffEntry e;
                e.antecedent = xs;
                e.network = net;
                e.network_values = sv.network_values;
                entries.push_back(std::move(e));
            }
        }
        sort_entries(entries);
    }

    std::vector<SufficientExplanation> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        SufficientExplanation se = detail::entry_to_explanation(m, e, y, /*actual=*/true);
        se.antecedent = detail::to_assignment(m, values_at(solved, e.antecedent));
        out.push_back(std::move(se));
    }
    return out;
}

}  // namespace

std::vector<SufficientExplanation> actual_sufficient_explanations(const Model& m,
                                                                  const Assignment& context,
                                                                  const std::string& target,
                                                                  const Rational& value,
                                                                  const Options& opts) {
    return explanations_at(m, context, target, value, opts, /*only_good=*/false);
}

std::vector<SufficientExplanation> good_sufficient_explanations(const Model& m,
                                                                const Assignment& context,
                                                                const std::string& target,
                                                                const Rational& value,
                                                                const Options& opts) {
    return explanations_at(m, context, target, value, opts, /*only_good=*/true);
}

// --- counterfactual dependence ------------------------------------------

namespace {

struct ContrastSpec {
    std::vector<VarId> vars;          // ascending
    std::vector<int> actual;          // domain indices at the context
    std::vector<int> contrast;        // componentwise different
};

// Does [X <- x', W <- w_actual] change the target away from its actual
// value? One solve per witness.
bool flips_target(const Model& m, const std::vector<int>& solved, const ContrastSpec& cs,
                  const std::vector<VarId>& witness, VarId y, Budget& budget) {
    detail::Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < cs.vars.size(); ++i) ov.set(cs.vars[i], cs.contrast[i]);
    for (VarId w : witness) ov.set(w, solved[static_cast<std::size_t>(w)]);
    std::vector<int> run(m.vars.size(), -1);
    for (std::size_t i = 0; i < m.exo.size(); ++i) {
        run[static_cast<std::size_t>(m.exo[i])] = solved[static_cast<std::size_t>(m.exo[i])];
    }
    detail::solve_idx(m, &ov, run, budget);
    return run[static_cast<std::size_t>(y)] != solved[static_cast<std::size_t>(y)];
}

// Any witness for any restriction of the contrast to a strict nonempty
// subset of X? Used for the minimality clause of dependence.
bool strict_subset_has_witness(const Model& m, const std::vector<int>& solved,
                               const ContrastSpec& cs, VarId y, Budget& budget) {
    std::vector<VarId> all;
    for (VarId v : m.endo) {
        if (v != y) all.push_back(v);
    }
    for (const auto& sub : detail::subsets_by_size(cs.vars)) {
        if (sub.empty() || sub.size() == cs.vars.size()) continue;
        ContrastSpec restricted;
        restricted.vars = sub;
        for (VarId v : sub) {
            auto it = std::lower_bound(cs.vars.begin(), cs.vars.end(), v);
            std::size_t pos = static_cast<std::size_t>(it - cs.vars.begin());
            restricted.actual.push_back(cs.actual[pos]);
            restricted.contrast.push_back(cs.contrast[pos]);
        }
        std::vector<VarId> witness_pool = detail::set_minus(all, sub);
        for (const auto& w : detail::subsets_by_size(witness_pool)) {
            if (flips_target(m, solved, restricted, w, y, budget)) return true;
        }
    }
    return false;
}

}  // namespace

DependenceResult counterfactually_depends(const Model& m, const Assignment& context,
                                          const Assignment& x, const Assignment& x_prime,
                                          const std::string& target, const Rational& value,
                                          WitnessMode mode, const Options& opts) {
    int y_idx = -1;
    VarId y = checked_target(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_full(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }

    VarValues xv = detail::to_var_values(m, x, /*endogenous_only=*/true);
    VarValues xpv = detail::to_var_values(m, x_prime, /*endogenous_only=*/true);
    if (xv.vars.empty()) throw DomainError("the dependence set must be nonempty");
    if (xv.vars != xpv.vars) {
        throw DomainError("contrast values must cover exactly the dependence variables");
    }
    ContrastSpec cs;
    cs.vars = xv.vars;
    cs.actual = xv.vals;
    cs.contrast = xpv.vals;
    for (std::size_t i = 0; i < cs.vars.size(); ++i) {
        if (cs.vars[i] == y) throw DomainError("the dependence set cannot contain the target");
        if (solved[static_cast<std::size_t>(cs.vars[i])] != cs.actual[i]) {
            throw DomainError("'" + m.var(cs.vars[i]).name +
                              "' does not have the stated actual value in this context");
        }
        if (cs.contrast[i] == cs.actual[i]) {
            throw DomainError("contrast value for '" + m.var(cs.vars[i]).name +
                              "' must differ from the actual value");
        }
    }

    std::vector<VarId> others;
    for (VarId v : m.endo) {
        if (v != y && xv.value_of(v) < 0) others.push_back(v);
    }

    DependenceResult out;
    auto witness_result = [&](const std::vector<VarId>& w) {
        Witness wit;
        wit.vars = names_of(m, w);
        wit.values = detail::to_assignment(m, values_at(solved, w));
        return wit;
    };

    switch (mode) {
        case WitnessMode::Empty:
            if (flips_target(m, solved, cs, {}, y, budget)) out.witnesses.push_back(witness_result({}));
            break;
        case WitnessMode::AllOthers:
            if (flips_target(m, solved, cs, others, y, budget)) {
                out.witnesses.push_back(witness_result(others));
            }
            break;
        case WitnessMode::Any:
            for (const auto& w : detail::subsets_by_size(others)) {
                if (flips_target(m, solved, cs, w, y, budget)) {
                    out.witnesses.push_back(witness_result(w));
                }
            }
            break;
    }
    if (out.witnesses.empty()) {
        out.refutation = "no witness makes the target change under the contrast values";
        return out;
    }
    if (cs.vars.size() > 1 && strict_subset_has_witness(m, solved, cs, y, budget)) {
        out.witnesses.clear();
        out.refutation = "the dependence set is not minimal: a strict subset has a witness";
        return out;
    }
    out.holds = true;
    return out;
}

// --- counterfactual explanations ----------------------------------------

std::vector<CounterfactualExplanation> good_counterfactual_explanations(
    const Model& m, const Assignment& context, const std::string& target, const Rational& value,
    const Options& opts) {
    int y_idx = -1;
    VarId y = checked_target(m, target, value, y_idx);
    Budget budget(opts.budget);
    std::vector<int> solved = solve_full(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }

    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (v != y) pool.push_back(v);
    }

    // Domination is contrast-aware. An explanation is beaten by another
    // with the same contrast pair and componentwise-smaller witness and
    // network, or by one whose contrast pair is a strict restriction of
    // its own (fewer manipulated variables, same values on them). The
    // restriction branch is what makes the dependence/explanation
    // correspondence exact: a non-minimal dependence set never survives.
    struct Family {
        std::vector<VarId> xs;
        VarValues contrast;  // x' over xs
    };
    std::vector<Family> families_with_explanations;
    std::vector<CounterfactualExplanation> out;

    auto family_dominated = [&](const std::vector<VarId>& xs, const VarValues& contrast) {
        for (const Family& f : families_with_explanations) {
            if (f.xs.size() >= xs.size()) continue;
            if (!detail::is_subset(f.xs, xs)) continue;
            bool restricted = true;
            for (std::size_t i = 0; i < f.xs.size(); ++i) {
                if (contrast.value_of(f.xs[i]) != f.contrast.vals[i]) {
                    restricted = false;
                    break;
                }
            }
            if (restricted) return true;
        }
        return false;
    };

    VarValues want_y;
    want_y.set(y, y_idx);

    // |X| ascending so every potential restriction family is known before
    // the families it dominates come up.
    for (const auto& xs : detail::subsets_by_size(pool)) {
        if (xs.empty()) continue;  // a contrast needs at least one variable

        std::vector<std::vector<int>> alternatives(xs.size());
        bool contrastable = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            int actual_idx = solved[static_cast<std::size_t>(xs[i])];
            for (int k = 0; k < static_cast<int>(m.var(xs[i]).domain.size()); ++k) {
                if (k != actual_idx) alternatives[i].push_back(k);
            }
            if (alternatives[i].empty()) contrastable = false;
        }
        if (!contrastable) continue;

        std::vector<std::size_t> pick(xs.size(), 0);
        while (true) {
            VarValues contrast;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                contrast.set(xs[i], alternatives[i][pick[i]]);
            }
            if (!family_dominated(xs, contrast)) {
                // Within the family, (W, N) pairs in ascending size:
                // supersets of an accepted pair are dominated.
                struct Accepted {
                    std::vector<VarId> ws, net;
                };
                std::vector<Accepted> accepted;
                bool family_nonempty = false;
                std::vector<VarId> rest_w = detail::set_minus(pool, xs);
                for (const auto& ws : detail::subsets_by_size(rest_w)) {
                    std::vector<VarId> rest_n = detail::set_minus(rest_w, ws);
                    for (const auto& nrest : detail::subsets_by_size(rest_n)) {
                        std::vector<VarId> net = nrest;
                        net.insert(std::lower_bound(net.begin(), net.end(), y), y);
                        bool dominated_here = false;
                        for (const Accepted& a : accepted) {
                            if (detail::is_subset(a.ws, ws) && detail::is_subset(a.net, net)) {
                                dominated_here = true;
                                break;
                            }
                        }
                        if (dominated_here) continue;

                        VarValues actual_ant = values_at(solved, detail::set_union(xs, ws));
                        detail::StrongOutcome actual_sv = detail::strong_values(
                            m, actual_ant, net, budget, opts.memo, &want_y);
                        if (!actual_sv.holds) continue;

                        VarValues contrast_ant = actual_ant;
                        for (std::size_t i = 0; i < xs.size(); ++i) {
                            contrast_ant.set(xs[i], contrast.vals[i]);
                        }
                        detail::StrongOutcome sv =
                            detail::strong_values(m, contrast_ant, net, budget, opts.memo);
                        if (!sv.holds || sv.network_values.value_of(y) == y_idx) continue;

                        family_nonempty = true;
                        accepted.push_back({ws, net});
                        CounterfactualExplanation ce;
                        ce.antecedent = detail::to_assignment(m, values_at(solved, xs));
                        ce.contrast = detail::to_assignment(m, contrast);
                        ce.witness = detail::to_assignment(m, values_at(solved, ws));
                        ce.network = names_of(m, net);
                        ce.target = m.var(y).name;
                        ce.value = value;
                        ce.counterfactual_value =
                            m.var(y).domain.at(sv.network_values.value_of(y));
                        out.push_back(std::move(ce));
                    }
                }
                if (family_nonempty) families_with_explanations.push_back({xs, contrast});
            }
            std::size_t i = xs.size();
            bool wrapped = true;
            while (i-- > 0) {
                if (++pick[i] < alternatives[i].size()) {
                    wrapped = false;
                    break;
                }
                pick[i] = 0;
            }
            if (wrapped) break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CounterfactualExplanation& a, const CounterfactualExplanation& b) {
                  return canonical_less(a, b);
              });
    return out;
}

}  // namespace causalex
