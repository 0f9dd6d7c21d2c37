#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "causalex/budget.hpp"
#include "causalex/diagnostics.hpp"
#include "causalex/expr.hpp"
#include "causalex/rational.hpp"

namespace causalex {

using VarId = int;

// Partial or total mapping variable name -> exact value. A context is an
// assignment whose key set is exactly the exogenous variables.
using Assignment = std::map<std::string, Rational>;

// Finite, ordered, duplicate-free value set. The order is fixed at
// construction and drives every deterministic enumeration.
class Domain {
public:
    Domain() = default;
    explicit Domain(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Rational& at(int idx) const { return values_[static_cast<std::size_t>(idx)]; }
    int index_of(const Rational& v) const;  // -1 when absent
    bool contains(const Rational& v) const { return index_of(v) >= 0; }

private:
    std::vector<Rational> values_;
    std::map<Rational, int> index_;
};

struct Variable {
    std::string name;
    Domain domain;
    bool exogenous = false;
    // Declared 'auto' in the DSL; remembered so serialization can note it.
    bool auto_domain = false;
    std::vector<Rational> auto_extra;
};

struct Equation {
    VarId target = -1;
    ExprPtr body;
    std::vector<VarId> deps;          // syntactically referenced, ascending VarId
    std::vector<std::size_t> stride;  // row-major over deps, last dep fastest
    std::vector<int> table;           // value index in target domain per dep tuple
};

// Internal partial assignment over variable ids: parallel arrays, ids
// strictly ascending. Cheap to compare, hash and use as a memo key.
struct VarValues {
    std::vector<VarId> vars;
    std::vector<int> vals;  // domain indices

    bool operator==(const VarValues& o) const { return vars == o.vars && vals == o.vals; }
    bool operator<(const VarValues& o) const {
        if (vars != o.vars) return vars < o.vars;
        return vals < o.vals;
    }
    std::size_t size() const { return vars.size(); }
    bool empty() const { return vars.empty(); }
    int value_of(VarId v) const;  // -1 when unset
    void set(VarId v, int val);   // keeps ids sorted
};

struct ModelCaches;  // grow-only memo tables, defined in model.cpp

// Validated, immutable, strongly recursive causal model over finite
// domains. All query operations are pure; the only mutable state is a
// grow-only verdict cache guarded by a mutex, so sharing one model across
// threads is safe.
class Model {
public:
    std::string name;
    std::vector<Variable> vars;      // declaration order
    std::vector<VarId> exo;          // declaration order
    std::vector<VarId> endo;         // declaration order
    std::vector<Equation> equations; // parallel to endo
    std::vector<int> eq_index;       // VarId -> index into equations, -1 for exogenous
    std::vector<VarId> topo;         // endogenous ids in evaluation order

    Model();
    Model(const Model& o);
    Model& operator=(const Model& o);

    VarId id_of(const std::string& n) const;          // -1 when unknown
    VarId require(const std::string& n) const;        // throws DomainError
    const Variable& var(VarId id) const { return vars[static_cast<std::size_t>(id)]; }
    const Equation& equation_of(VarId id) const;
    std::size_t context_count() const;  // product of exogenous domain sizes

    ModelCaches& caches() const { return *caches_; }

private:
    std::shared_ptr<ModelCaches> caches_;  // reset on copy
};

// Unvalidated model description as written (by the parser or by hand).
struct SourceDecl {
    std::string name;
    bool exogenous = false;
    std::vector<Rational> domain;  // explicit values in declaration order
    bool auto_domain = false;      // endogenous only: close over the equation image
    std::vector<Rational> auto_extra;
    ExprPtr equation;              // endogenous only
    int line = 0, column = 0;
};

struct ModelSource {
    std::string name;
    std::vector<SourceDecl> decls;
};

struct ModelResult {
    std::optional<Model> model;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return model.has_value(); }
};

// Runs the full validation pipeline: name resolution, acyclicity of the
// syntactic dependency graph, auto-domain closure, range closure (every
// equation lands in its target domain for every in-domain input tuple),
// and lookup-table compilation.
ModelResult compile_model(const ModelSource& src, const Options& opts = {});

// --- core semantics ---------------------------------------------------

// Unique simultaneous solution for a total exogenous context.
Assignment solve(const Model& m, const Assignment& context, const Options& opts = {});

// Surgical submodel: each intervened equation becomes the assigned
// constant. Throws DomainError for unknown variables, exogenous targets or
// out-of-domain values.
Model intervene(const Model& m, const Assignment& iv);

// Boolean combination of (in)equality atoms over endogenous variables,
// optionally behind an intervention prefix.
struct BoolNode;
using BoolPtr = std::shared_ptr<const BoolNode>;
struct BoolNode {
    enum class Kind { Atom, Not, And, Or };
    Kind kind = Kind::Atom;
    std::string var;   // Atom
    Rational value;    // Atom
    bool negated = false;  // Atom: true for !=
    BoolPtr lhs, rhs;  // Not uses lhs only

    static BoolPtr atom(std::string var, Rational value, bool negated = false);
    static BoolPtr negate(BoolPtr x);
    static BoolPtr conj(BoolPtr l, BoolPtr r);
    static BoolPtr disj(BoolPtr l, BoolPtr r);
};

struct CausalFormula {
    std::vector<std::pair<std::string, Rational>> interventions;  // as written
    BoolPtr body;
};

// (M, u) |= [iv] body.
bool evaluate(const Model& m, const Assignment& context, const CausalFormula& f,
              const Options& opts = {});

struct UniversalResult {
    bool holds = false;
    // Enumeration-first falsifying context when holds is false.
    std::optional<Assignment> counterexample;
};

// M |= f, decided by exhausting all contexts in lexicographic domain order.
UniversalResult holds_universally(const Model& m, const CausalFormula& f,
                                  const Options& opts = {});

// --- internal index-level machinery (shared by the query modules) ------

namespace detail {

// Intervention overlay: value index per VarId, -1 = untouched.
struct Overlay {
    std::vector<int> values;
    explicit Overlay(std::size_t n_vars) : values(n_vars, -1) {}
    void set(VarId v, int idx) { values[static_cast<std::size_t>(v)] = idx; }
    void clear(VarId v) { values[static_cast<std::size_t>(v)] = -1; }
};

// Solves into `out` (sized |vars|, exogenous slots pre-filled by the
// caller). Charges one budget unit.
void solve_idx(const Model& m, const Overlay* iv, std::vector<int>& out, Budget& budget);

// Lexicographic odometer over the domains of `vars` (first variable most
// significant). Starts at the all-first tuple.
class TupleIter {
public:
    TupleIter(const Model& m, std::vector<VarId> vars);
    bool done() const { return done_; }
    const std::vector<int>& current() const { return idx_; }
    const std::vector<VarId>& variables() const { return vars_; }
    void advance();
    std::size_t count() const;  // total number of tuples

private:
    const Model* m_;
    std::vector<VarId> vars_;
    std::vector<int> idx_;
    bool done_ = false;
};

VarValues to_var_values(const Model& m, const Assignment& a, bool endogenous_only);
Assignment to_assignment(const Model& m, const VarValues& vv);
Assignment to_assignment(const Model& m, const std::vector<VarId>& vars,
                         const std::vector<int>& idx_all);

// Fills exogenous slots of `out` from a context tuple over m.exo.
void seed_context(const Model& m, const std::vector<int>& ctx_tuple, std::vector<int>& out);

}  // namespace detail

}  // namespace causalex
