#include "causalex/causation.hpp"

#include <algorithm>

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

std::vector<int> solve_context(const Model& m, const Assignment& context, Budget& budget) {
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

// N' subsets of the network (target always kept), ascending size then lex:
// the first certifying subset becomes the certificate.
std::optional<std::vector<VarId>> replace_check_idx(const Model& m, const VarValues& contrast_ant,
                                                    const std::vector<VarId>& network, VarId y,
                                                    int y_idx, Budget& budget, bool memo) {
    std::vector<VarId> net_rest;
    for (VarId v : network) {
        if (v != y) net_rest.push_back(v);
    }
    VarValues want;
    want.set(y, y_idx);
    for (const auto& sub : detail::subsets_by_size(net_rest)) {
        std::vector<VarId> candidate = sub;
        candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), y), y);
        detail::StrongOutcome sv =
            detail::strong_values(m, contrast_ant, candidate, budget, memo, &want);
        if (sv.holds) return candidate;
    }
    return std::nullopt;
}

struct CauseQuery {
    VarId y = -1;
    int y_idx = -1;
    std::vector<int> solved;
    VarValues x;  // actual values, verified
};

CauseQuery prepare(const Model& m, const Assignment& context, const Assignment& x,
                   const std::string& target, const Rational& value, Budget& budget) {
    CauseQuery q;
    q.y = m.require(target);
    if (m.var(q.y).exogenous) throw DomainError("target '" + target + "' must be endogenous");
    q.y_idx = m.var(q.y).domain.index_of(value);
    if (q.y_idx < 0) {
        throw DomainError("value " + value.str() + " is not in the domain of '" + target + "'");
    }
    q.solved = solve_context(m, context, budget);
    if (q.solved[static_cast<std::size_t>(q.y)] != q.y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }
    q.x = detail::to_var_values(m, x, /*endogenous_only=*/true);
    if (q.x.vars.empty()) throw DomainError("the cause set must be nonempty");
    for (std::size_t i = 0; i < q.x.vars.size(); ++i) {
        if (q.x.vars[i] == q.y) throw DomainError("the cause set cannot contain the target");
        if (q.solved[static_cast<std::size_t>(q.x.vars[i])] != q.x.vals[i]) {
            throw DomainError("'" + m.var(q.x.vars[i]).name +
                              "' does not have the stated actual value in this context");
        }
    }
    return q;
}

VarValues contrast_values(const Model& m, const CauseQuery& q, const Assignment& x_prime) {
    VarValues xp = detail::to_var_values(m, x_prime, /*endogenous_only=*/true);
    if (xp.vars != q.x.vars) {
        throw DomainError("contrast values must cover exactly the cause variables");
    }
    for (std::size_t i = 0; i < xp.vars.size(); ++i) {
        if (xp.vals[i] == q.x.vals[i]) {
            throw DomainError("contrast value for '" + m.var(xp.vars[i]).name +
                              "' must differ from the actual value");
        }
    }
    return xp;
}

CauseStatement make_statement(const Model& m, const CauseQuery& q, const GoodSuffEntry& e,
                              const std::optional<VarValues>& xp) {
    CauseStatement st;
    st.cause = detail::to_assignment(m, values_at(q.solved, q.x.vars));
    if (xp.has_value()) st.contrast = detail::to_assignment(m, *xp);
    st.target = m.var(q.y).name;
    st.target_value = m.var(q.y).domain.at(q.y_idx);
    st.evidence = detail::entry_to_explanation(m, e, q.y, /*actual=*/true);
    st.evidence.antecedent = detail::to_assignment(m, values_at(q.solved, e.antecedent));
    std::vector<VarId> w = detail::set_minus(e.antecedent, q.x.vars);
    st.witness = detail::to_assignment(m, values_at(q.solved, w));
    return st;
}

// Componentwise-different contrast tuples, used when enumerating Def-14
// contrast claims.
std::vector<VarValues> all_contrasts(const Model& m, const CauseQuery& q) {
    std::vector<std::vector<int>> alts(q.x.vars.size());
    for (std::size_t i = 0; i < q.x.vars.size(); ++i) {
        for (int k = 0; k < static_cast<int>(m.var(q.x.vars[i]).domain.size()); ++k) {
            if (k != q.x.vals[i]) alts[i].push_back(k);
        }
        if (alts[i].empty()) return {};  // singleton domain: no contrast exists
    }
    std::vector<VarValues> out;
    std::vector<std::size_t> pick(q.x.vars.size(), 0);
    while (true) {
        VarValues xp;
        for (std::size_t i = 0; i < q.x.vars.size(); ++i) {
            xp.set(q.x.vars[i], alts[i][pick[i]]);
        }
        out.push_back(std::move(xp));
        std::size_t i = q.x.vars.size();
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

// Replacement candidates for the optimal-cause check: every value tuple
// over X other than the actual one. A tuple that keeps some variables at
// their actual values stands in for the restriction of the contrast to
// the variables it changes, so this covers replacements by any part of X.
std::vector<VarValues> all_replacement_tuples(const Model& m, const CauseQuery& q) {
    std::vector<VarValues> out;
    std::vector<int> pick(q.x.vars.size(), 0);
    while (true) {
        VarValues xp;
        bool all_actual = true;
        for (std::size_t i = 0; i < q.x.vars.size(); ++i) {
            xp.set(q.x.vars[i], pick[i]);
            if (pick[i] != q.x.vals[i]) all_actual = false;
        }
        if (!all_actual) out.push_back(std::move(xp));
        std::size_t i = q.x.vars.size();
        bool wrapped = true;
        while (i-- > 0) {
            if (++pick[i] < static_cast<int>(m.var(q.x.vars[i]).domain.size())) {
                wrapped = false;
                break;
            }
            pick[i] = 0;
        }
        if (wrapped) break;
    }
    return out;
}

}  // namespace

ReplaceResult can_replace(const Model& m, const SufficientExplanation& explanation,
                          const Assignment& x_part, const Assignment& x_prime,
                          const Options& opts) {
    VarId y = m.require(explanation.target);
    int y_idx = m.var(y).domain.index_of(explanation.target_value);
    if (y_idx < 0) throw DomainError("explanation target value is out of domain");

    VarValues ant = detail::to_var_values(m, explanation.antecedent, true);
    VarValues xv = detail::to_var_values(m, x_part, true);
    VarValues xp = detail::to_var_values(m, x_prime, true);
    if (xv.vars != xp.vars) {
        throw DomainError("contrast values must cover exactly the replaced variables");
    }
    for (std::size_t i = 0; i < xv.vars.size(); ++i) {
        if (ant.value_of(xv.vars[i]) != xv.vals[i]) {
            throw DomainError("'" + m.var(xv.vars[i]).name +
                              "' with this value is not part of the explanation");
        }
        if (xp.vals[i] == xv.vals[i]) {
            throw DomainError("contrast value for '" + m.var(xv.vars[i]).name +
                              "' must differ from the replaced value");
        }
    }

    std::vector<VarId> network;
    for (const auto& name : explanation.network) network.push_back(m.require(name));
    std::sort(network.begin(), network.end());

    VarValues contrast_ant = ant;
    for (std::size_t i = 0; i < xp.vars.size(); ++i) contrast_ant.set(xp.vars[i], xp.vals[i]);

    Budget budget(opts.budget);
    auto cert = replace_check_idx(m, contrast_ant, network, y, y_idx, budget, opts.memo);
    ReplaceResult out;
    out.can = cert.has_value();
    if (cert) out.certificate = names_of(m, *cert);
    return out;
}

namespace {

enum class CauseMode {
    GivenContrast,  // x' supplied by the caller
    Optimal,        // no replacement tuple exists anywhere
    SomeContrast,   // some replacement tuple fails somewhere
    Direct,         // membership in a good direct explanation
};

CauseResult cause_engine(const Model& m, const CauseQuery& q,
                         const std::optional<VarValues>& xp, CauseMode mode, Budget& budget,
                         const Options& opts) {
    std::vector<GoodSuffEntry> goods =
        detail::good_sufficient_idx(m, q.solved, q.y, budget, opts.memo);

    CauseResult out;
    std::vector<VarValues> tuples;
    if (mode == CauseMode::Optimal || mode == CauseMode::SomeContrast) {
        tuples = all_replacement_tuples(m, q);
    }

    for (const GoodSuffEntry& e : goods) {
        if (!detail::is_subset(q.x.vars, e.antecedent)) continue;
        if (mode == CauseMode::Direct && e.network.size() != 1) continue;

        VarValues witness;
        for (VarId v : detail::set_minus(e.antecedent, q.x.vars)) {
            witness.set(v, q.solved[static_cast<std::size_t>(v)]);
        }
        auto contrast_ant = [&](const VarValues& alt) {
            VarValues ant = witness;
            for (std::size_t i = 0; i < alt.vars.size(); ++i) ant.set(alt.vars[i], alt.vals[i]);
            return ant;
        };
        auto replaceable = [&](const VarValues& alt) {
            return replace_check_idx(m, contrast_ant(alt), e.network, q.y, q.y_idx, budget,
                                     opts.memo)
                .has_value();
        };

        bool certifies = false;
        std::optional<VarValues> found_contrast = xp;
        switch (mode) {
            case CauseMode::Direct:
                certifies = true;  // membership in a good direct explanation is the claim
                break;
            case CauseMode::GivenContrast:
                certifies = !replaceable(*xp);
                break;
            case CauseMode::Optimal:
                certifies = true;
                for (const VarValues& alt : tuples) {
                    if (replaceable(alt)) {
                        certifies = false;
                        break;
                    }
                }
                break;
            case CauseMode::SomeContrast:
                for (const VarValues& alt : tuples) {
                    if (!replaceable(alt)) {
                        certifies = true;
                        found_contrast = alt;
                        break;
                    }
                }
                break;
        }
        if (!certifies) continue;

        CauseStatement st = make_statement(m, q, e, found_contrast);
        if (!out.holds) {
            out.holds = true;
            out.statement = st;
            if (!opts.all_evidence) return out;
        }
        if (opts.all_evidence) out.all.push_back(std::move(st));
    }
    if (!out.holds) {
        switch (mode) {
            case CauseMode::Direct:
                out.refutation = "no good direct sufficient explanation contains the cause";
                break;
            case CauseMode::Optimal:
                out.refutation = "every containing explanation admits replacing values";
                break;
            case CauseMode::SomeContrast:
                out.refutation = "every replacement tuple succeeds in every containing "
                                 "good explanation, or none contains the cause";
                break;
            case CauseMode::GivenContrast:
                out.refutation = "the contrast values can replace the cause in every "
                                 "containing good explanation, or none contains it";
                break;
        }
    }
    return out;
}

}  // namespace

CauseResult actual_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const Assignment& x_prime, const std::string& target,
                         const Rational& value, const Options& opts) {
    Budget budget(opts.budget);
    return detail::actual_cause_budgeted(m, context, x, x_prime, target, value, budget, opts);
}

namespace detail {

CauseResult actual_cause_budgeted(const Model& m, const Assignment& context,
                                  const Assignment& x, const Assignment& x_prime,
                                  const std::string& target, const Rational& value,
                                  Budget& budget, const Options& opts) {
    CauseQuery q = prepare(m, context, x, target, value, budget);
    VarValues xp = contrast_values(m, q, x_prime);
    return cause_engine(m, q, xp, CauseMode::GivenContrast, budget, opts);
}

}  // namespace detail

CauseResult optimal_cause(const Model& m, const Assignment& context, const Assignment& x,
                          const std::string& target, const Rational& value,
                          const Options& opts) {
    Budget budget(opts.budget);
    CauseQuery q = prepare(m, context, x, target, value, budget);
    return cause_engine(m, q, std::nullopt, CauseMode::Optimal, budget, opts);
}

CauseResult direct_cause(const Model& m, const Assignment& context, const Assignment& x,
                         const std::string& target, const Rational& value,
                         const Options& opts) {
    Budget budget(opts.budget);
    CauseQuery q = prepare(m, context, x, target, value, budget);
    return cause_engine(m, q, std::nullopt, CauseMode::Direct, budget, opts);
}

CauseResult actual_cause_some_contrast(const Model& m, const Assignment& context,
                                       const Assignment& x, const std::string& target,
                                       const Rational& value, const Options& opts) {
    Budget budget(opts.budget);
    CauseQuery q = prepare(m, context, x, target, value, budget);
    return cause_engine(m, q, std::nullopt, CauseMode::SomeContrast, budget, opts);
}

std::vector<CauseStatement> enumerate_actual_causes(const Model& m, const Assignment& context,
                                                    const std::string& target,
                                                    const Rational& value, const Options& opts) {
    Budget budget(opts.budget);
    VarId y = m.require(target);
    int y_idx = m.var(y).domain.index_of(value);
    if (y_idx < 0) {
        throw DomainError("value " + value.str() + " is not in the domain of '" + target + "'");
    }
    std::vector<int> solved = solve_context(m, context, budget);
    if (solved[static_cast<std::size_t>(y)] != y_idx) {
        throw DomainError("target does not have the stated value in this context");
    }

    std::vector<VarId> pool;
    for (VarId v : m.endo) {
        if (v != y) pool.push_back(v);
    }

    std::vector<CauseStatement> out;
    for (const auto& xs : detail::subsets_by_size(pool)) {
        if (xs.empty()) continue;
        CauseQuery q;
        q.y = y;
        q.y_idx = y_idx;
        q.solved = solved;
        q.x = values_at(solved, xs);
        for (const VarValues& xp : all_contrasts(m, q)) {
            CauseResult r = cause_engine(m, q, xp, CauseMode::GivenContrast, budget, opts);
            if (r.holds) out.push_back(std::move(*r.statement));
        }
    }
    return out;
}

}  // namespace causalex
