#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "causalex/rational.hpp"

namespace causalex {

enum class UnaryOp { Neg, Not };
enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Structural-equation expression tree.
//
// Comparisons and logical operators yield 0/1; logical operators treat any
// nonzero operand as true. Division is exact rational division and throws
// EvalError on a zero divisor. `ite` evaluates only the taken branch, so
// guarded division like ite(X=0, 0, 1/X) is total; & and | evaluate both
// operands.
struct Expr {
    enum class Kind { Literal, Var, Unary, Binary, Ite };

    Kind kind;
    Rational literal;   // Kind::Literal
    std::string var;    // Kind::Var
    UnaryOp uop{};      // Kind::Unary
    BinaryOp bop{};     // Kind::Binary
    ExprPtr a, b, c;    // operands; Ite uses all three

    static ExprPtr lit(Rational v);
    static ExprPtr ref(std::string name);
    static ExprPtr unary(UnaryOp op, ExprPtr x);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e);
};

using EnvFn = std::function<const Rational*(const std::string&)>;

// Evaluates with a lookup callback; throws EvalError on unbound variables
// and division by zero.
Rational eval_expr(const Expr& e, const EnvFn& env);

// Evaluates against a name->value map (the public scm-lang surface).
Rational eval_expr(const Expr& e, const std::map<std::string, Rational>& env);

// Variables referenced anywhere in the expression, each listed once,
// in first-appearance order.
std::vector<std::string> referenced_vars(const Expr& e);

bool expr_equal(const Expr& a, const Expr& b);

// Emits concrete DSL syntax; parsing the result yields a structurally
// identical tree.
std::string expr_to_string(const Expr& e);

}  // namespace causalex
