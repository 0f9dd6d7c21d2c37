#include "causalex/theorems.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "causalex/causation.hpp"
#include "causalex/detail/caches.hpp"
#include "causalex/detail/subsets.hpp"
#include "causalex/explanations.hpp"
#include "causalex/graph.hpp"
#include "causalex/serialize.hpp"
#include "causalex/sufficiency.hpp"

namespace causalex {

namespace {

using detail::is_subset;
using detail::set_minus;
using detail::set_union;
using detail::subsets_by_size;
using detail::TupleIter;

struct TrialContext {
    const Model& m;
    VarId output;
    Budget& budget;
    const Options& opts;
    TheoremReport& report;
    int trial;
};

void record(TrialContext& t, const std::string& context, const std::string& detail) {
    ++t.report.failure_count;
    if (t.report.failures.size() < kMaxRecordedFailures) {
        TheoremFailure f;
        f.trial = t.trial;
        f.model_dsl = serialize_model(t.m);
        f.context = context;
        f.detail = detail;
        t.report.failures.push_back(std::move(f));
    }
}

std::string describe(const Model& m, const VarValues& vv) {
    std::string out;
    for (std::size_t i = 0; i < vv.vars.size(); ++i) {
        if (i > 0) out += ",";
        out += m.var(vv.vars[i]).name + "=" + m.var(vv.vars[i]).domain.at(vv.vals[i]).str();
    }
    return out.empty() ? "{}" : out;
}

std::string describe_set(const Model& m, const std::vector<VarId>& vars) {
    std::string out = "{";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i > 0) out += ",";
        out += m.var(vars[i]).name;
    }
    return out + "}";
}

VarValues values_at(const std::vector<int>& solved, const std::vector<VarId>& vars) {
    VarValues vv;
    for (VarId v : vars) vv.set(v, solved[static_cast<std::size_t>(v)]);
    return vv;
}

VarValues restrict_vv(const VarValues& vv, const std::vector<VarId>& vars) {
    VarValues out;
    for (VarId v : vars) out.set(v, vv.value_of(v));
    return out;
}

// Weak sufficiency at index level.
bool weak_idx(const Model& m, const VarValues& ant, const VarValues& con, Budget& budget) {
    detail::Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < ant.vars.size(); ++i) ov.set(ant.vars[i], ant.vals[i]);
    std::vector<int> solved(m.vars.size(), -1);
    for (TupleIter u(m, m.exo); !u.done(); u.advance()) {
        detail::seed_context(m, u.current(), solved);
        detail::solve_idx(m, &ov, solved, budget);
        for (std::size_t i = 0; i < con.vars.size(); ++i) {
            if (solved[static_cast<std::size_t>(con.vars[i])] != con.vals[i]) return false;
        }
    }
    return true;
}

// Strong sufficiency for the consequent along some network.
bool strong_some_network(const Model& m, const VarValues& ant, const VarValues& con,
                         Budget& budget, const Options& opts) {
    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (ant.value_of(v) < 0 && con.value_of(v) < 0) pool.push_back(v);
    }
    std::vector<VarId> base = con.vars;
    for (const auto& extra : subsets_by_size(pool)) {
        std::vector<VarId> net = set_union(base, extra);
        detail::StrongOutcome sv = detail::strong_values(m, ant, net, budget, opts.memo, &con);
        if (sv.holds) return true;
    }
    return false;
}

// All (vars -> value-tuple) assignments over a subset, lexicographic.
std::vector<VarValues> value_tuples(const Model& m, const std::vector<VarId>& vars) {
    std::vector<VarValues> out;
    for (TupleIter it(m, vars); !it.done(); it.advance()) {
        VarValues vv;
        for (std::size_t i = 0; i < vars.size(); ++i) vv.set(vars[i], it.current()[i]);
        out.push_back(std::move(vv));
        if (vars.empty()) break;
    }
    return out;
}

// Componentwise-different contrast tuples against given actual values.
std::vector<VarValues> contrast_tuples(const Model& m, const VarValues& actual) {
    std::vector<std::vector<int>> alts(actual.vars.size());
    for (std::size_t i = 0; i < actual.vars.size(); ++i) {
        for (int k = 0; k < static_cast<int>(m.var(actual.vars[i]).domain.size()); ++k) {
            if (k != actual.vals[i]) alts[i].push_back(k);
        }
        if (alts[i].empty()) return {};
    }
    std::vector<VarValues> out;
    std::vector<std::size_t> pick(actual.vars.size(), 0);
    while (true) {
        VarValues vv;
        for (std::size_t i = 0; i < actual.vars.size(); ++i) {
            vv.set(actual.vars[i], alts[i][pick[i]]);
        }
        out.push_back(std::move(vv));
        std::size_t i = actual.vars.size();
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
    return out;
}

// ---- individual theorem checks ------------------------------------------

void check_prop9(TrialContext& t) {
    const Model& m = t.m;
    for (const auto& xs : subsets_by_size(m.endo)) {
        for (const auto& ys : subsets_by_size(set_minus(m.endo, xs))) {
            if (ys.empty()) continue;
            for (const VarValues& x : value_tuples(m, xs)) {
                for (const VarValues& y : value_tuples(m, ys)) {
                    VarValues con = y;
                    bool ds = detail::direct_check(m, x, con, t.budget, t.opts.memo).holds;
                    bool ss = strong_some_network(m, x, con, t.budget, t.opts);
                    bool ws = weak_idx(m, x, con, t.budget);
                    if ((ds && !ss) || (ss && !ws)) {
                        record(t, "",
                               "sufficiency chain broken for " + describe(m, x) + " -> " +
                                   describe(m, y) + ": direct=" + std::to_string(ds) +
                                   " strong=" + std::to_string(ss) +
                                   " weak=" + std::to_string(ws));
                    }
                }
            }
        }
    }
}

void check_thm12(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});
    for (const auto& xs : subsets_by_size(pool)) {
        for (const VarValues& x : value_tuples(m, xs)) {
            for (int yv = 0; yv < static_cast<int>(m.var(y).domain.size()); ++yv) {
                VarValues con;
                con.set(y, yv);
                bool ws = weak_idx(m, x, con, t.budget);
                bool ss = strong_some_network(m, x, con, t.budget, t.opts);
                bool ds = detail::direct_check(m, x, con, t.budget, t.opts.memo).holds;
                if (ws != ss || ss != ds) {
                    record(t, "",
                           "sufficiency notions diverge for " + describe(m, x) + " -> " +
                               m.var(y).name + "=" + m.var(y).domain.at(yv).str() +
                               ": weak=" + std::to_string(ws) + " strong=" +
                               std::to_string(ss) + " direct=" + std::to_string(ds));
                }
            }
        }
    }
}

// Shared context loop: returns each context with its solved values.
template <typename Fn>
void for_each_context(TrialContext& t, Fn&& fn) {
    std::vector<int> solved(t.m.vars.size(), -1);
    for (TupleIter u(t.m, t.m.exo); !u.done(); u.advance()) {
        detail::seed_context(t.m, u.current(), solved);
        detail::solve_idx(t.m, nullptr, solved, t.budget);
        Assignment context = detail::to_assignment(t.m, t.m.exo, solved);
        fn(context, solved);
    }
}

void check_thm16(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});
    for_each_context(t, [&](const Assignment& context, const std::vector<int>& solved) {
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        auto goods = good_counterfactual_explanations(m, context, m.var(y).name, y_val, t.opts);
        std::set<std::pair<std::vector<VarId>, VarValues>> pairs;
        for (const auto& ce : goods) {
            VarValues contrast = detail::to_var_values(m, ce.contrast, true);
            pairs.insert({contrast.vars, contrast});
        }
        for (const auto& xs : subsets_by_size(pool)) {
            if (xs.empty()) continue;
            VarValues actual = values_at(solved, xs);
            for (const VarValues& xp : contrast_tuples(m, actual)) {
                Assignment x_a = detail::to_assignment(m, actual);
                Assignment xp_a = detail::to_assignment(m, xp);
                bool cd = counterfactually_depends(m, context, x_a, xp_a, m.var(y).name, y_val,
                                                   WitnessMode::Any, t.opts)
                              .holds;
                bool ce = pairs.count({xs, xp}) > 0;
                if (cd != ce) {
                    record(t, assignment_to_string(context),
                           "dependence/explanation mismatch for " + describe(m, actual) +
                               " vs " + describe(m, xp) + ": depends=" + std::to_string(cd) +
                               " good-explanation=" + std::to_string(ce));
                }
            }
        }
    });
}

void check_thm17(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});
    for_each_context(t, [&](const Assignment& context, const std::vector<int>& solved) {
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        for (const auto& xs : subsets_by_size(pool)) {
            if (xs.empty()) continue;
            std::size_t n_others = pool.size() - xs.size();
            VarValues actual = values_at(solved, xs);
            for (const VarValues& xp : contrast_tuples(m, actual)) {
                Assignment x_a = detail::to_assignment(m, actual);
                Assignment xp_a = detail::to_assignment(m, xp);
                DependenceResult any = counterfactually_depends(
                    m, context, x_a, xp_a, m.var(y).name, y_val, WitnessMode::Any, t.opts);
                bool b_empty = false, b_all = false, b_mid = false;
                for (const Witness& w : any.witnesses) {
                    if (w.vars.empty()) b_empty = true;
                    if (w.vars.size() == n_others) b_all = true;
                    if (!w.vars.empty() && w.vars.size() < n_others) b_mid = true;
                }
                bool ok = b_empty == b_all;
                // The intermediate bullet needs at least two other variables.
                if (ok && n_others >= 2) ok = b_empty == b_mid;
                if (!ok) {
                    record(t, assignment_to_string(context),
                           "witness shapes diverge for " + describe(m, actual) + " vs " +
                               describe(m, xp) + ": empty=" + std::to_string(b_empty) +
                               " all=" + std::to_string(b_all) +
                               " intermediate=" + std::to_string(b_mid));
                }
            }
        }
    });
}

void check_prop19(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});

    for (int yv = 0; yv < static_cast<int>(m.var(y).domain.size()); ++yv) {
        // Every sufficient explanation of Y=yv, actual or not.
        struct Expl {
            std::vector<VarId> ant_vars;
            VarValues ant;
            std::vector<VarId> net;
        };
        std::vector<Expl> expls;
        for (const auto& zs : subsets_by_size(pool)) {
            for (const VarValues& z : value_tuples(m, zs)) {
                for (const auto& nrest : subsets_by_size(set_minus(pool, zs))) {
                    std::vector<VarId> net = nrest;
                    net.insert(std::lower_bound(net.begin(), net.end(), y), y);
                    VarValues want;
                    want.set(y, yv);
                    detail::StrongOutcome sv =
                        detail::strong_values(m, z, net, t.budget, t.opts.memo, &want);
                    if (sv.holds) expls.push_back({zs, z, net});
                }
            }
        }
        const Rational y_val = m.var(y).domain.at(yv);
        for (const Expl& e1 : expls) {
            for (const auto& xs : subsets_by_size(e1.ant_vars)) {
                if (xs.empty()) continue;
                std::vector<VarId> ws = set_minus(e1.ant_vars, xs);
                for (const Expl& e2 : expls) {
                    // Dominator including (X=x', A=a) with A inside W, a = w|A.
                    if (!is_subset(xs, e2.ant_vars) || !is_subset(e2.net, e1.net)) continue;
                    std::vector<VarId> as = set_minus(e2.ant_vars, xs);
                    if (!is_subset(as, ws)) continue;
                    bool values_ok = true;
                    bool differs_everywhere = true;
                    for (VarId v : as) {
                        if (e2.ant.value_of(v) != e1.ant.value_of(v)) values_ok = false;
                    }
                    for (VarId v : xs) {
                        if (e2.ant.value_of(v) == e1.ant.value_of(v)) differs_everywhere = false;
                    }
                    if (!values_ok || !differs_everywhere) continue;

                    SufficientExplanation pub;
                    pub.antecedent = detail::to_assignment(m, e1.ant);
                    pub.network.clear();
                    for (VarId v : e1.net) pub.network.push_back(m.var(v).name);
                    pub.target = m.var(y).name;
                    pub.target_value = y_val;
                    Assignment x_part = detail::to_assignment(m, restrict_vv(e1.ant, xs));
                    Assignment x_prime = detail::to_assignment(m, restrict_vv(e2.ant, xs));
                    if (!can_replace(m, pub, x_part, x_prime, t.opts).can) {
                        record(t, "",
                               "dominating explanation exists but can_replace failed: X=" +
                                   describe_set(m, xs) + " in " + describe(m, e1.ant) +
                                   " along " + describe_set(m, e1.net));
                    }
                }
            }
        }
    }
}

void check_thm21(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    for_each_context(t, [&](const Assignment& context, const std::vector<int>& solved) {
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        for (const auto& ce : good_counterfactual_explanations(m, context, m.var(y).name, y_val,
                                                               t.opts)) {
            VarValues x1 = detail::to_var_values(m, ce.antecedent, true);
            VarValues x1p = detail::to_var_values(m, ce.contrast, true);
            bool certified = false;
            for (const auto& sub : subsets_by_size(x1.vars)) {
                if (sub.empty()) continue;
                Assignment x2, x2p;
                for (VarId v : sub) {
                    x2[m.var(v).name] = m.var(v).domain.at(x1.value_of(v));
                    x2p[m.var(v).name] = m.var(v).domain.at(x1p.value_of(v));
                }
                if (actual_cause(m, context, x2, x2p, m.var(y).name, y_val, t.opts).holds) {
                    certified = true;
                    break;
                }
            }
            if (!certified) {
                record(t, assignment_to_string(context),
                       "counterfactual explanation with no actual-cause subset: X=" +
                           assignment_to_string(ce.antecedent) + " x'=" +
                           assignment_to_string(ce.contrast));
            }
        }
    });
}

void check_prop24(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});
    for_each_context(t, [&](const Assignment& context, const std::vector<int>& solved) {
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        for (const auto& xs : subsets_by_size(pool)) {
            if (xs.empty()) continue;
            VarValues actual = values_at(solved, xs);
            Assignment x_a = detail::to_assignment(m, actual);
            if (!direct_cause(m, context, x_a, m.var(y).name, y_val, t.opts).holds) continue;
            if (!actual_cause_some_contrast(m, context, x_a, m.var(y).name, y_val, t.opts)
                     .holds) {
                record(t, assignment_to_string(context),
                       "direct cause without an actual-cause contrast: X=" +
                           describe(m, actual));
            }
        }
    });
}

void check_thm25(TrialContext& t) {
    const Model& m = t.m;
    VarId y = t.output;
    std::vector<VarId> pool = set_minus(m.endo, {y});
    for_each_context(t, [&](const Assignment& context, const std::vector<int>& solved) {
        Rational y_val = m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);
        auto goods = detail::good_sufficient_idx(m, solved, y, t.budget, t.opts.memo);
        for (const auto& xs : subsets_by_size(pool)) {
            if (xs.empty()) continue;
            VarValues actual = values_at(solved, xs);
            Assignment x_a = detail::to_assignment(m, actual);
            bool b_direct = direct_cause(m, context, x_a, m.var(y).name, y_val, t.opts).holds;
            bool b_actual =
                actual_cause_some_contrast(m, context, x_a, m.var(y).name, y_val, t.opts)
                    .holds;
            bool b_part = false;
            for (const auto& e : goods) {
                if (is_subset(xs, e.antecedent)) {
                    b_part = true;
                    break;
                }
            }
            if (b_direct != b_actual || b_actual != b_part) {
                record(t, assignment_to_string(context),
                       "causation notions diverge for X=" + describe(m, actual) +
                           ": direct=" + std::to_string(b_direct) +
                           " actual=" + std::to_string(b_actual) +
                           " part-of-good=" + std::to_string(b_part));
            }
        }
    });
}

void check_observation1(TrialContext& t) {
    const Model& m = t.m;
    std::vector<VarId> rts = root_ids(m);
    detail::Overlay ov(m.vars.size());
    std::vector<int> first(m.vars.size(), -1);
    std::vector<int> other(m.vars.size(), -1);
    for (TupleIter r(m, rts); !r.done(); r.advance()) {
        for (std::size_t i = 0; i < rts.size(); ++i) ov.set(rts[i], r.current()[i]);
        bool have_first = false;
        for (TupleIter u(m, m.exo); !u.done(); u.advance()) {
            std::vector<int>& slot = have_first ? other : first;
            detail::seed_context(m, u.current(), slot);
            detail::solve_idx(m, &ov, slot, t.budget);
            if (!have_first) {
                have_first = true;
                continue;
            }
            bool same = true;
            for (VarId v : m.endo) {
                if (first[static_cast<std::size_t>(v)] != other[static_cast<std::size_t>(v)]) {
                    same = false;
                    break;
                }
            }
            if (!same) {
                VarValues rv;
                for (std::size_t i = 0; i < rts.size(); ++i) rv.set(rts[i], r.current()[i]);
                record(t, assignment_to_string(detail::to_assignment(m, m.exo, other)),
                       "solution varies across contexts under roots " + describe(m, rv));
                break;
            }
        }
    }
}

}  // namespace

std::optional<TheoremId> theorem_from_string(const std::string& name) {
    static const std::map<std::string, TheoremId> table = {
        {"prop9", TheoremId::Prop9},   {"thm12", TheoremId::Thm12},
        {"thm16", TheoremId::Thm16},   {"thm17", TheoremId::Thm17},
        {"prop19", TheoremId::Prop19}, {"thm21", TheoremId::Thm21},
        {"prop24", TheoremId::Prop24}, {"thm25", TheoremId::Thm25},
        {"obs1", TheoremId::Observation1},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::Prop9: return "prop9";
        case TheoremId::Thm12: return "thm12";
        case TheoremId::Thm16: return "thm16";
        case TheoremId::Thm17: return "thm17";
        case TheoremId::Prop19: return "prop19";
        case TheoremId::Thm21: return "thm21";
        case TheoremId::Prop24: return "prop24";
        case TheoremId::Thm25: return "thm25";
        case TheoremId::Observation1: return "obs1";
    }
    return "unknown";
}

GeneratorConfig::Mode default_mode_for(TheoremId id) {
    switch (id) {
        case TheoremId::Thm12:
        case TheoremId::Thm17:
        case TheoremId::Thm25:
            return GeneratorConfig::Mode::Independence;
        default:
            return GeneratorConfig::Mode::General;
    }
}

TheoremReport check_theorem(TheoremId id, const CheckConfig& config) {
    TheoremReport report;
    report.theorem = theorem_name(id);
    report.seed = config.gen.seed;
    report.trials = config.trials;

    SplitMix64 seeds(config.gen.seed);
    for (int trial = 0; trial < config.trials; ++trial) {
        GeneratorConfig gen = config.gen;
        gen.seed = seeds.next();
        int max_n = std::max(2, config.gen.n_endogenous);
        gen.n_endogenous =
            2 + static_cast<int>(seeds.below(static_cast<std::uint64_t>(max_n - 1)));
        GeneratedModel gm = random_model(gen);

        Budget budget(config.opts.budget);
        TrialContext t{gm.model, gm.model.require(gm.output), budget, config.opts, report, trial};
        try {
            switch (id) {
                case TheoremId::Prop9: check_prop9(t); break;
                case TheoremId::Thm12: check_thm12(t); break;
                case TheoremId::Thm16: check_thm16(t); break;
                case TheoremId::Thm17: check_thm17(t); break;
                case TheoremId::Prop19: check_prop19(t); break;
                case TheoremId::Thm21: check_thm21(t); break;
                case TheoremId::Prop24: check_prop24(t); break;
                case TheoremId::Thm25: check_thm25(t); break;
                case TheoremId::Observation1: check_observation1(t); break;
            }
        } catch (const BudgetExceeded&) {
            ++report.budget_exceeded_trials;
        }
    }
    return report;
}

}  // namespace causalex
