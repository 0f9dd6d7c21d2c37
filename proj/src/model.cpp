#include "causalex/model.hpp"

#include <algorithm>
#include <set>

#include "causalex/detail/caches.hpp"

namespace causalex {

// --- Domain -------------------------------------------------------------

Domain::Domain(std::vector<Rational> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        index_.emplace(values_[i], static_cast<int>(i));
    }
}

int Domain::index_of(const Rational& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

// --- VarValues ----------------------------------------------------------

int VarValues::value_of(VarId v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v) return -1;
    return vals[static_cast<std::size_t>(it - vars.begin())];
}

void VarValues::set(VarId v, int val) {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    auto pos = it - vars.begin();
    if (it != vars.end() && *it == v) {
        vals[static_cast<std::size_t>(pos)] = val;
        return;
    }
    vars.insert(it, v);
    vals.insert(vals.begin() + pos, val);
}

// --- Model caches -------------------------------------------------------

Model::Model() : caches_(std::make_shared<ModelCaches>()) {}
Model::Model(const Model& o) { *this = o; }

Model& Model::operator=(const Model& o) {
    if (this == &o) return *this;
    name = o.name;
    vars = o.vars;
    exo = o.exo;
    endo = o.endo;
    equations = o.equations;
    eq_index = o.eq_index;
    topo = o.topo;
    caches_ = std::make_shared<ModelCaches>();  // verdicts are model-specific
    return *this;
}

VarId Model::id_of(const std::string& n) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name == n) return static_cast<VarId>(i);
    }
    return -1;
}

VarId Model::require(const std::string& n) const {
    VarId id = id_of(n);
    if (id < 0) throw DomainError("unknown variable '" + n + "'");
    return id;
}

const Equation& Model::equation_of(VarId id) const {
    int e = eq_index[static_cast<std::size_t>(id)];
    if (e < 0) throw DomainError("variable '" + var(id).name + "' has no equation");
    return equations[static_cast<std::size_t>(e)];
}

std::size_t Model::context_count() const {
    std::size_t n = 1;
    for (VarId u : exo) {
        std::size_t s = var(u).domain.size();
        if (n > (SIZE_MAX / s)) return SIZE_MAX;
        n *= s;
    }
    return n;
}

// --- compilation --------------------------------------------------------

namespace {

Diagnostic validate_error(std::string msg, const SourceDecl* d = nullptr) {
    Diagnostic diag;
    diag.phase = Diagnostic::Phase::Validate;
    diag.message = std::move(msg);
    if (d != nullptr) {
        diag.line = d->line;
        diag.column = d->column;
        diag.span = d->name;
    }
    return diag;
}

std::string tuple_text(const Model& m, const std::vector<VarId>& deps,
                       const std::vector<int>& idx) {
    std::string out;
    for (std::size_t i = 0; i < deps.size(); ++i) {
        if (i > 0) out += ", ";
        out += m.var(deps[i]).name + "=" + m.var(deps[i]).domain.at(idx[i]).str();
    }
    return out;
}

}  // namespace

ModelResult compile_model(const ModelSource& src, const Options& opts) {
    ModelResult result;
    std::vector<Diagnostic>& diags = result.diagnostics;
    Budget budget(opts.budget);

    Model m;
    m.name = src.name;

    // Declarations and duplicate names.
    std::set<std::string> seen;
    for (const auto& d : src.decls) {
        if (!seen.insert(d.name).second) {
            diags.push_back(validate_error("duplicate definition of '" + d.name + "'", &d));
            continue;
        }
        Variable v;
        v.name = d.name;
        v.exogenous = d.exogenous;
        v.auto_domain = d.auto_domain;
        v.auto_extra = d.auto_extra;
        if (!d.auto_domain) {
            std::set<Rational> dup;
            for (const auto& val : d.domain) {
                if (!dup.insert(val).second) {
                    diags.push_back(validate_error(
                        "duplicate domain value " + val.str() + " for '" + d.name + "'", &d));
                }
            }
            if (d.domain.empty()) {
                diags.push_back(validate_error("empty domain for '" + d.name + "'", &d));
            }
            v.domain = Domain(d.domain);
        }
        if (d.exogenous && d.auto_domain) {
            diags.push_back(
                validate_error("exogenous variable '" + d.name + "' cannot use auto domain", &d));
        }
        VarId id = static_cast<VarId>(m.vars.size());
        m.vars.push_back(std::move(v));
        if (d.exogenous) {
            m.exo.push_back(id);
        } else {
            m.endo.push_back(id);
        }
    }
    if (has_error(diags)) return result;
    if (m.endo.empty()) {
        diags.push_back(validate_error("model needs at least one endogenous variable"));
        return result;
    }

    // Resolve equation references.
    m.eq_index.assign(m.vars.size(), -1);
    std::vector<const SourceDecl*> decl_of(m.vars.size(), nullptr);
    for (const auto& d : src.decls) {
        VarId id = m.id_of(d.name);
        decl_of[static_cast<std::size_t>(id)] = &d;
        if (d.exogenous) continue;
        if (!d.equation) {
            diags.push_back(validate_error("missing equation for '" + d.name + "'", &d));
            continue;
        }
        Equation eq;
        eq.target = id;
        eq.body = d.equation;
        std::set<VarId> deps;
        for (const auto& ref : referenced_vars(*d.equation)) {
            VarId rid = m.id_of(ref);
            if (rid < 0) {
                diags.push_back(validate_error("unknown variable '" + ref + "'", &d));
                continue;
            }
            deps.insert(rid);
        }
        eq.deps.assign(deps.begin(), deps.end());
        m.eq_index[static_cast<std::size_t>(id)] = static_cast<int>(m.equations.size());
        m.equations.push_back(std::move(eq));
    }
    if (has_error(diags)) return result;

    // Topological order over the syntactic dependency graph.
    std::vector<int> pending(m.vars.size(), 0);
    std::vector<std::vector<VarId>> dependents(m.vars.size());
    for (const auto& eq : m.equations) {
        for (VarId dep : eq.deps) {
            if (m.var(dep).exogenous) continue;
            ++pending[static_cast<std::size_t>(eq.target)];
            dependents[static_cast<std::size_t>(dep)].push_back(eq.target);
        }
    }
    std::vector<VarId> ready;
    for (VarId v : m.endo) {
        if (pending[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    }
    while (!ready.empty()) {
        // Smallest id first keeps the order deterministic.
        auto it = std::min_element(ready.begin(), ready.end());
        VarId v = *it;
        ready.erase(it);
        m.topo.push_back(v);
        for (VarId child : dependents[static_cast<std::size_t>(v)]) {
            if (--pending[static_cast<std::size_t>(child)] == 0) ready.push_back(child);
        }
    }
    if (m.topo.size() != m.endo.size()) {
        for (VarId v : m.endo) {
            if (pending[static_cast<std::size_t>(v)] > 0) {
                diags.push_back(validate_error(
                    "cyclic dependency involving '" + m.var(v).name + "'",
                    decl_of[static_cast<std::size_t>(v)]));
                break;
            }
        }
        return result;
    }

    // Auto-domain closure, range closure and table compilation, in
    // evaluation order so dependency domains are already final.
    try {
        for (VarId v : m.topo) {
            Equation& eq = m.equations[static_cast<std::size_t>(m.eq_index[v])];
            const SourceDecl* d = decl_of[static_cast<std::size_t>(v)];

            eq.stride.assign(eq.deps.size(), 1);
            std::size_t total = 1;
            for (std::size_t i = eq.deps.size(); i-- > 0;) {
                eq.stride[i] = total;
                std::size_t s = m.var(eq.deps[i]).domain.size();
                if (total > opts.budget / std::max<std::size_t>(s, 1)) {
                    diags.push_back(validate_error(
                        "equation for '" + m.var(v).name + "' is too large to tabulate", d));
                    return result;
                }
                total *= s;
            }

            std::vector<Rational> results;
            results.reserve(total);
            std::vector<int> idx(eq.deps.size(), 0);
            std::vector<Rational> env_vals(eq.deps.size());
            for (std::size_t row = 0; row < total; ++row) {
                budget.charge();
                for (std::size_t i = 0; i < eq.deps.size(); ++i) {
                    env_vals[i] = m.var(eq.deps[i]).domain.at(idx[i]);
                }
                EnvFn env = [&](const std::string& ref) -> const Rational* {
                    for (std::size_t i = 0; i < eq.deps.size(); ++i) {
                        if (m.var(eq.deps[i]).name == ref) return &env_vals[i];
                    }
                    return nullptr;
                };
                try {
                    results.push_back(eval_expr(*eq.body, env));
                } catch (const EvalError& err) {
                    diags.push_back(validate_error(
                        std::string(err.what()) + " while evaluating equation for '" +
                            m.var(v).name + "' at " + tuple_text(m, eq.deps, idx),
                        d));
                    return result;
                }
                for (std::size_t i = eq.deps.size(); i-- > 0;) {
                    if (++idx[i] < static_cast<int>(m.var(eq.deps[i]).domain.size())) break;
                    idx[i] = 0;
                }
            }

            Variable& target = m.vars[static_cast<std::size_t>(v)];
            if (target.auto_domain) {
                std::set<Rational> closure(results.begin(), results.end());
                closure.insert(target.auto_extra.begin(), target.auto_extra.end());
                target.domain = Domain(std::vector<Rational>(closure.begin(), closure.end()));
            }

            eq.table.resize(total);
            std::vector<int> probe(eq.deps.size(), 0);
            for (std::size_t row = 0; row < total; ++row) {
                int vi = target.domain.index_of(results[row]);
                if (vi < 0) {
                    diags.push_back(validate_error(
                        "equation for '" + m.var(v).name + "' yields " + results[row].str() +
                            " outside its domain at " + tuple_text(m, eq.deps, probe),
                        d));
                    return result;
                }
                eq.table[row] = vi;
                for (std::size_t i = eq.deps.size(); i-- > 0;) {
                    if (++probe[i] < static_cast<int>(m.var(eq.deps[i]).domain.size())) break;
                    probe[i] = 0;
                }
            }
        }
    } catch (const BudgetExceeded& b) {
        diags.push_back(validate_error(std::string(b.what()) + " during model validation"));
        return result;
    }

    result.model = std::move(m);
    return result;
}

// --- solving ------------------------------------------------------------

namespace detail {

void solve_idx(const Model& m, const Overlay* iv, std::vector<int>& out, Budget& budget) {
    budget.charge();
    for (VarId v : m.topo) {
        if (iv != nullptr) {
            int forced = iv->values[static_cast<std::size_t>(v)];
            if (forced >= 0) {
                out[static_cast<std::size_t>(v)] = forced;
                continue;
            }
        }
        const Equation& eq = m.equations[static_cast<std::size_t>(m.eq_index[v])];
        std::size_t row = 0;
        for (std::size_t i = 0; i < eq.deps.size(); ++i) {
            row += eq.stride[i] * static_cast<std::size_t>(out[static_cast<std::size_t>(eq.deps[i])]);
        }
        out[static_cast<std::size_t>(v)] = eq.table[row];
    }
}

TupleIter::TupleIter(const Model& m, std::vector<VarId> vars)
    : m_(&m), vars_(std::move(vars)), idx_(vars_.size(), 0) {
    for (VarId v : vars_) {
        if (m.var(v).domain.size() == 0) done_ = true;  // unreachable for valid models
    }
}

void TupleIter::advance() {
    for (std::size_t i = vars_.size(); i-- > 0;) {
        if (++idx_[i] < static_cast<int>(m_->var(vars_[i]).domain.size())) return;
        idx_[i] = 0;
    }
    done_ = true;  // wrapped all positions (or had none)
}

std::size_t TupleIter::count() const {
    std::size_t n = 1;
    for (VarId v : vars_) {
        std::size_t s = m_->var(v).domain.size();
        if (n > SIZE_MAX / std::max<std::size_t>(s, 1)) return SIZE_MAX;
        n *= s;
    }
    return n;
}

VarValues to_var_values(const Model& m, const Assignment& a, bool endogenous_only) {
    VarValues vv;
    for (const auto& [name, value] : a) {
        VarId id = m.require(name);
        if (endogenous_only && m.var(id).exogenous) {
            throw DomainError("variable '" + name + "' is exogenous");
        }
        int idx = m.var(id).domain.index_of(value);
        if (idx < 0) {
            throw DomainError("value " + value.str() + " is not in the domain of '" + name + "'");
        }
        vv.set(id, idx);
    }
    return vv;
}

Assignment to_assignment(const Model& m, const VarValues& vv) {
    Assignment a;
    for (std::size_t i = 0; i < vv.vars.size(); ++i) {
        a[m.var(vv.vars[i]).name] = m.var(vv.vars[i]).domain.at(vv.vals[i]);
    }
    return a;
}

Assignment to_assignment(const Model& m, const std::vector<VarId>& vars,
                         const std::vector<int>& idx_all) {
    Assignment a;
    for (VarId v : vars) {
        a[m.var(v).name] = m.var(v).domain.at(idx_all[static_cast<std::size_t>(v)]);
    }
    return a;
}

void seed_context(const Model& m, const std::vector<int>& ctx_tuple, std::vector<int>& out) {
    for (std::size_t i = 0; i < m.exo.size(); ++i) {
        out[static_cast<std::size_t>(m.exo[i])] = ctx_tuple[i];
    }
}

}  // namespace detail

Assignment solve(const Model& m, const Assignment& context, const Options& opts) {
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
    Budget budget(opts.budget);
    detail::solve_idx(m, nullptr, out, budget);
    std::vector<VarId> all(m.vars.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<VarId>(i);
    return detail::to_assignment(m, all, out);
}

Model intervene(const Model& m, const Assignment& iv) {
    Model out = m;
    for (const auto& [name, value] : iv) {
        VarId id = out.require(name);
        if (out.var(id).exogenous) {
            throw DomainError("cannot intervene on exogenous variable '" + name + "'");
        }
        int idx = out.var(id).domain.index_of(value);
        if (idx < 0) {
            throw DomainError("value " + value.str() + " is not in the domain of '" + name + "'");
        }
        Equation& eq = out.equations[static_cast<std::size_t>(out.eq_index[id])];
        eq.body = Expr::lit(value);
        eq.deps.clear();
        eq.stride.clear();
        eq.table.assign(1, idx);
        // The domain no longer derives from the replaced equation; keep it
        // as an explicit list so serialization round-trips.
        out.vars[static_cast<std::size_t>(id)].auto_domain = false;
        out.vars[static_cast<std::size_t>(id)].auto_extra.clear();
    }
    return out;
}

// --- causal formulas ----------------------------------------------------

BoolPtr BoolNode::atom(std::string var, Rational value, bool negated) {
    auto n = std::make_shared<BoolNode>();
    n->kind = Kind::Atom;
    n->var = std::move(var);
    n->value = value;
    n->negated = negated;
    return n;
}

BoolPtr BoolNode::negate(BoolPtr x) {
    auto n = std::make_shared<BoolNode>();
    n->kind = Kind::Not;
    n->lhs = std::move(x);
    return n;
}

BoolPtr BoolNode::conj(BoolPtr l, BoolPtr r) {
    auto n = std::make_shared<BoolNode>();
    n->kind = Kind::And;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

BoolPtr BoolNode::disj(BoolPtr l, BoolPtr r) {
    auto n = std::make_shared<BoolNode>();
    n->kind = Kind::Or;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

namespace {

// Formula with names resolved to ids and values to domain indices.
struct ResolvedAtomTree {
    BoolNode::Kind kind;
    VarId var = -1;
    int val = -1;
    bool negated = false;
    std::unique_ptr<ResolvedAtomTree> lhs, rhs;
};

ResolvedAtomTree resolve_body(const Model& m, const BoolNode& n) {
    ResolvedAtomTree out;
    out.kind = n.kind;
    switch (n.kind) {
        case BoolNode::Kind::Atom: {
            VarId id = m.require(n.var);
            if (m.var(id).exogenous) {
                throw DomainError("atomic formulas range over endogenous variables; '" +
                                  n.var + "' is exogenous");
            }
            int idx = m.var(id).domain.index_of(n.value);
            if (idx < 0) {
                throw DomainError("value " + n.value.str() + " is not in the domain of '" +
                                  n.var + "'");
            }
            out.var = id;
            out.val = idx;
            out.negated = n.negated;
            break;
        }
        case BoolNode::Kind::Not:
            out.lhs = std::make_unique<ResolvedAtomTree>(resolve_body(m, *n.lhs));
            break;
        case BoolNode::Kind::And:
        case BoolNode::Kind::Or:
            out.lhs = std::make_unique<ResolvedAtomTree>(resolve_body(m, *n.lhs));
            out.rhs = std::make_unique<ResolvedAtomTree>(resolve_body(m, *n.rhs));
            break;
    }
    return out;
}

bool eval_body(const ResolvedAtomTree& t, const std::vector<int>& solved) {
    switch (t.kind) {
        case BoolNode::Kind::Atom: {
            bool eq = solved[static_cast<std::size_t>(t.var)] == t.val;
            return t.negated ? !eq : eq;
        }
        case BoolNode::Kind::Not:
            return !eval_body(*t.lhs, solved);
        case BoolNode::Kind::And:
            return eval_body(*t.lhs, solved) && eval_body(*t.rhs, solved);
        case BoolNode::Kind::Or:
            return eval_body(*t.lhs, solved) || eval_body(*t.rhs, solved);
    }
    return false;
}

struct ResolvedFormula {
    detail::Overlay overlay;
    ResolvedAtomTree body;
};

ResolvedFormula resolve_formula(const Model& m, const CausalFormula& f) {
    ResolvedFormula out{detail::Overlay(m.vars.size()), resolve_body(m, *f.body)};
    std::set<VarId> seen;
    for (const auto& [name, value] : f.interventions) {
        VarId id = m.require(name);
        if (m.var(id).exogenous) {
            throw DomainError("cannot intervene on exogenous variable '" + name + "'");
        }
        if (!seen.insert(id).second) {
            throw DomainError("intervention variables must be distinct; '" + name + "' repeats");
        }
        int idx = m.var(id).domain.index_of(value);
        if (idx < 0) {
            throw DomainError("value " + value.str() + " is not in the domain of '" + name + "'");
        }
        out.overlay.set(id, idx);
    }
    return out;
}

}  // namespace

bool evaluate(const Model& m, const Assignment& context, const CausalFormula& f,
              const Options& opts) {
    if (!f.body) throw DomainError("formula has no body");
    ResolvedFormula rf = resolve_formula(m, f);
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
    if (context.size() != m.exo.size()) {
        throw DomainError("context must assign exactly the exogenous variables");
    }
    Budget budget(opts.budget);
    detail::solve_idx(m, &rf.overlay, out, budget);
    return eval_body(rf.body, out);
}

UniversalResult holds_universally(const Model& m, const CausalFormula& f, const Options& opts) {
    if (!f.body) throw DomainError("formula has no body");
    ResolvedFormula rf = resolve_formula(m, f);
    Budget budget(opts.budget);
    std::vector<int> out(m.vars.size(), -1);
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), out);
        detail::solve_idx(m, &rf.overlay, out, budget);
        if (!eval_body(rf.body, out)) {
            UniversalResult r;
            r.holds = false;
            r.counterexample = detail::to_assignment(m, m.exo, out);
            return r;
        }
    }
    return UniversalResult{true, std::nullopt};
}

}  // namespace causalex
