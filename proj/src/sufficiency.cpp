#include "causalex/sufficiency.hpp"

#include <algorithm>

#include "causalex/detail/caches.hpp"

namespace causalex {

namespace {

// Endogenous variables not mentioned by either side.
std::vector<VarId> free_endogenous(const Model& m, const VarValues& a, const VarValues& b) {
    std::vector<VarId> out;
    for (VarId v : m.endo) {
        if (a.value_of(v) < 0 && b.value_of(v) < 0) out.push_back(v);
    }
    return out;
}

bool satisfies(const std::vector<int>& solved, const VarValues& want) {
    for (std::size_t i = 0; i < want.vars.size(); ++i) {
        if (solved[static_cast<std::size_t>(want.vars[i])] != want.vals[i]) return false;
    }
    return true;
}

bool extends(const VarValues& big, const VarValues& small) {
    for (std::size_t i = 0; i < small.vars.size(); ++i) {
        if (big.value_of(small.vars[i]) != small.vals[i]) return false;
    }
    return true;
}

void check_endogenous_disjoint(const Model& m, const VarValues& a, const VarValues& b) {
    for (VarId v : a.vars) {
        if (b.value_of(v) >= 0) {
            throw DomainError("antecedent and consequent share variable '" + m.var(v).name + "'");
        }
    }
}

}  // namespace

namespace detail {

namespace {

DirectVerdict direct_check_uncached(const Model& m, const VarValues& antecedent,
                                    const VarValues& consequent, Budget& budget) {
    DirectVerdict verdict;
    std::vector<VarId> free_vars = free_endogenous(m, antecedent, consequent);

    Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < antecedent.vars.size(); ++i) {
        ov.set(antecedent.vars[i], antecedent.vals[i]);
    }
    std::vector<int> solved(m.vars.size(), -1);
    for (TupleIter c(m, free_vars); !c.done(); c.advance()) {
        for (std::size_t i = 0; i < free_vars.size(); ++i) {
            ov.set(free_vars[i], c.current()[i]);
        }
        for (TupleIter u(m, m.exo); !u.done(); u.advance()) {
            seed_context(m, u.current(), solved);
            solve_idx(m, &ov, solved, budget);
            if (!satisfies(solved, consequent)) {
                verdict.holds = false;
                for (std::size_t i = 0; i < free_vars.size(); ++i) {
                    verdict.cex_settings.set(free_vars[i], c.current()[i]);
                }
                verdict.cex_context = u.current();
                return verdict;
            }
        }
    }
    verdict.holds = true;
    return verdict;
}

}  // namespace

DirectVerdict direct_check(const Model& m, const VarValues& antecedent,
                           const VarValues& consequent, Budget& budget, bool memo) {
    if (!memo) return direct_check_uncached(m, antecedent, consequent, budget);
    auto key = std::make_pair(antecedent, consequent);
    {
        std::lock_guard<std::mutex> lock(m.caches().mu);
        auto it = m.caches().direct_sufficiency.find(key);
        if (it != m.caches().direct_sufficiency.end()) return it->second;
    }
    DirectVerdict verdict = direct_check_uncached(m, antecedent, consequent, budget);
    {
        std::lock_guard<std::mutex> lock(m.caches().mu);
        m.caches().direct_sufficiency.emplace(std::move(key), verdict);
    }
    return verdict;
}

StrongOutcome strong_values(const Model& m, const VarValues& antecedent,
                            const std::vector<VarId>& network, Budget& budget, bool memo,
                            const VarValues* require) {
    StrongOutcome out;

    // Candidate from the lexicographically first free setting and context.
    std::vector<VarId> net_sorted = network;
    std::sort(net_sorted.begin(), net_sorted.end());
    VarValues net_probe;
    for (VarId v : net_sorted) net_probe.set(v, 0);  // placeholder values
    std::vector<VarId> free_vars = free_endogenous(m, antecedent, net_probe);

    Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < antecedent.vars.size(); ++i) {
        ov.set(antecedent.vars[i], antecedent.vals[i]);
    }
    for (VarId v : free_vars) ov.set(v, 0);
    std::vector<int> solved(m.vars.size(), -1);
    std::vector<int> ctx0(m.exo.size(), 0);
    seed_context(m, ctx0, solved);
    solve_idx(m, &ov, solved, budget);

    VarValues candidate;
    for (VarId v : net_sorted) candidate.set(v, solved[static_cast<std::size_t>(v)]);

    if (require != nullptr && !extends(candidate, *require)) {
        out.holds = false;
        for (std::size_t i = 0; i < free_vars.size(); ++i) out.cex_settings.set(free_vars[i], 0);
        out.cex_context = ctx0;
        return out;
    }

    // The candidate is forced: any constant network values must agree with
    // this evaluation, so verifying the candidate settles existence.
    DirectVerdict verdict = direct_check(m, antecedent, candidate, budget, memo);
    if (verdict.holds) {
        out.holds = true;
        out.network_values = std::move(candidate);
        return out;
    }
    out.holds = false;
    out.cex_settings = verdict.cex_settings;
    out.cex_context = verdict.cex_context;
    return out;
}

}  // namespace detail

SuffDecision weakly_sufficient(const Model& m, const Assignment& antecedent,
                               const Assignment& consequent, const Options& opts) {
    VarValues ant = detail::to_var_values(m, antecedent, /*endogenous_only=*/true);
    VarValues con = detail::to_var_values(m, consequent, /*endogenous_only=*/true);
    check_endogenous_disjoint(m, ant, con);
    if (con.empty()) throw DomainError("consequent must be nonempty");

    Budget budget(opts.budget);
    detail::Overlay ov(m.vars.size());
    for (std::size_t i = 0; i < ant.vars.size(); ++i) ov.set(ant.vars[i], ant.vals[i]);
    std::vector<int> solved(m.vars.size(), -1);
    for (detail::TupleIter u(m, m.exo); !u.done(); u.advance()) {
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
    VarValues ant = detail::to_var_values(m, antecedent, /*endogenous_only=*/true);
    VarValues con = detail::to_var_values(m, consequent, /*endogenous_only=*/true);
    check_endogenous_disjoint(m, ant, con);
    if (con.empty()) throw DomainError("consequent must be nonempty");

    Budget budget(opts.budget);
    detail::DirectVerdict verdict = detail::direct_check(m, ant, con, budget, opts.memo);
    SuffDecision r;
    r.holds = verdict.holds;
    if (!verdict.holds) {
        r.cex_settings = detail::to_assignment(m, verdict.cex_settings);
        std::vector<int> full(m.vars.size(), 0);
        detail::seed_context(m, verdict.cex_context, full);
        r.cex_context = detail::to_assignment(m, m.exo, full);
    }
    return r;
}

StrongResult strongly_sufficient(const Model& m, const Assignment& antecedent,
                                 const Assignment& consequent,
                                 const std::vector<std::string>& network,
                                 const Options& opts) {
    VarValues ant = detail::to_var_values(m, antecedent, /*endogenous_only=*/true);
    VarValues con = detail::to_var_values(m, consequent, /*endogenous_only=*/true);
    check_endogenous_disjoint(m, ant, con);
    if (con.empty()) throw DomainError("consequent must be nonempty");

    std::vector<VarId> net;
    for (const auto& name : network) {
        VarId id = m.require(name);
        if (m.var(id).exogenous) throw DomainError("network variable '" + name + "' is exogenous");
        if (ant.value_of(id) >= 0) {
            throw DomainError("network overlaps the antecedent at '" + name + "'");
        }
        net.push_back(id);
    }
    std::sort(net.begin(), net.end());
    net.erase(std::unique(net.begin(), net.end()), net.end());
    for (VarId v : con.vars) {
        if (!std::binary_search(net.begin(), net.end(), v)) {
            throw DomainError("consequent variable '" + m.var(v).name +
                              "' must belong to the network");
        }
    }

    Budget budget(opts.budget);
    detail::StrongOutcome out = detail::strong_values(m, ant, net, budget, opts.memo, &con);
    StrongResult r;
    if (out.holds && extends(out.network_values, con)) {
        r.holds = true;
        r.network_values = detail::to_assignment(m, out.network_values);
        return r;
    }
    r.holds = false;
    if (out.holds) {
        // Constant network values exist but do not extend the consequent.
        r.network_values = detail::to_assignment(m, out.network_values);
    } else {
        r.cex_settings = detail::to_assignment(m, out.cex_settings);
        std::vector<int> full(m.vars.size(), 0);
        detail::seed_context(m, out.cex_context, full);
        r.cex_context = detail::to_assignment(m, m.exo, full);
    }
    return r;
}

}  // namespace causalex
