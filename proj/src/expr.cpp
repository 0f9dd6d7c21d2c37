#include "causalex/expr.hpp"

#include <algorithm>

#include "causalex/budget.hpp"

namespace causalex {

ExprPtr Expr::lit(Rational v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Literal;
    e->literal = v;
    return e;
}

ExprPtr Expr::ref(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->var = std::move(name);
    return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr x) {
    // Fold negated literals so "-5" round-trips as a single literal node.
    if (op == UnaryOp::Neg && x->kind == Expr::Kind::Literal) {
        return lit(-x->literal);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->uop = op;
    e->a = std::move(x);
    return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->bop = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}

ExprPtr Expr::ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Ite;
    e->a = std::move(cond);
    e->b = std::move(then_e);
    e->c = std::move(else_e);
    return e;
}

namespace {

Rational bool_val(bool b) { return Rational(b ? 1 : 0); }

}  // namespace

Rational eval_expr(const Expr& e, const EnvFn& env) {
    switch (e.kind) {
        case Expr::Kind::Literal:
            return e.literal;
        case Expr::Kind::Var: {
            const Rational* v = env(e.var);
            if (v == nullptr) throw EvalError("unbound variable '" + e.var + "'");
            return *v;
        }
        case Expr::Kind::Unary: {
            Rational x = eval_expr(*e.a, env);
            if (e.uop == UnaryOp::Neg) return -x;
            return bool_val(x.is_zero());
        }
        case Expr::Kind::Binary: {
            Rational l = eval_expr(*e.a, env);
            Rational r = eval_expr(*e.b, env);
            switch (e.bop) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div:
                    if (r.is_zero()) throw EvalError("division by zero");
                    return l / r;
                case BinaryOp::Eq: return bool_val(l == r);
                case BinaryOp::Ne: return bool_val(l != r);
                case BinaryOp::Lt: return bool_val(l < r);
                case BinaryOp::Le: return bool_val(l <= r);
                case BinaryOp::Gt: return bool_val(l > r);
                case BinaryOp::Ge: return bool_val(l >= r);
                case BinaryOp::And: return bool_val(!l.is_zero() && !r.is_zero());
                case BinaryOp::Or: return bool_val(!l.is_zero() || !r.is_zero());
            }
            throw EvalError("unknown binary operator");
        }
        case Expr::Kind::Ite: {
            Rational c = eval_expr(*e.a, env);
            return c.is_zero() ? eval_expr(*e.c, env) : eval_expr(*e.b, env);
        }
    }
    throw EvalError("unknown expression node");
}

Rational eval_expr(const Expr& e, const std::map<std::string, Rational>& env) {
    return eval_expr(e, [&env](const std::string& name) -> const Rational* {
        auto it = env.find(name);
        return it == env.end() ? nullptr : &it->second;
    });
}

namespace {

void collect_vars(const Expr& e, std::vector<std::string>& out) {
    switch (e.kind) {
        case Expr::Kind::Var:
            if (std::find(out.begin(), out.end(), e.var) == out.end()) out.push_back(e.var);
            break;
        case Expr::Kind::Literal:
            break;
        default:
            if (e.a) collect_vars(*e.a, out);
            if (e.b) collect_vars(*e.b, out);
            if (e.c) collect_vars(*e.c, out);
            break;
    }
}

}  // namespace

std::vector<std::string> referenced_vars(const Expr& e) {
    std::vector<std::string> out;
    collect_vars(e, out);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Literal: return a.literal == b.literal;
        case Expr::Kind::Var: return a.var == b.var;
        case Expr::Kind::Unary: return a.uop == b.uop && expr_equal(*a.a, *b.a);
        case Expr::Kind::Binary:
            return a.bop == b.bop && expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
        case Expr::Kind::Ite:
            return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b) && expr_equal(*a.c, *b.c);
    }
    return false;
}

namespace {

// Precedence levels mirror the grammar: | < & < ! < cmp < +- < */ < unary.
int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Literal:
        case Expr::Kind::Var:
        case Expr::Kind::Ite:
            return 100;
        case Expr::Kind::Unary:
            return e.uop == UnaryOp::Not ? 30 : 60;
        case Expr::Kind::Binary:
            switch (e.bop) {
                case BinaryOp::Or: return 10;
                case BinaryOp::And: return 20;
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge:
                    return 40;
                case BinaryOp::Add:
                case BinaryOp::Sub:
                    return 50;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    return 55;
            }
    }
    return 100;
}

const char* op_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return " + ";
        case BinaryOp::Sub: return " - ";
        case BinaryOp::Mul: return " * ";
        case BinaryOp::Div: return " / ";
        case BinaryOp::Eq: return " = ";
        case BinaryOp::Ne: return " != ";
        case BinaryOp::Lt: return " < ";
        case BinaryOp::Le: return " <= ";
        case BinaryOp::Gt: return " > ";
        case BinaryOp::Ge: return " >= ";
        case BinaryOp::And: return " & ";
        case BinaryOp::Or: return " | ";
    }
    return " ? ";
}

void render(const Expr& e, int parent_prec, std::string& out) {
    int prec = precedence(e);
    bool parens = prec < parent_prec;
    if (parens) out.push_back('(');
    switch (e.kind) {
        case Expr::Kind::Literal:
            out += e.literal.str();
            break;
        case Expr::Kind::Var:
            out += e.var;
            break;
        case Expr::Kind::Unary:
            out += e.uop == UnaryOp::Neg ? "-" : "!";
            render(*e.a, prec + 1, out);
            break;
        case Expr::Kind::Binary: {
            // Left-associative chains keep the left child at the same level;
            // the right child needs one level more to re-parse identically.
            // Comparison is non-associative, so both sides go one level up.
            bool cmp = precedence(e) == 40;
            render(*e.a, cmp ? prec + 1 : prec, out);
            out += op_token(e.bop);
            render(*e.b, prec + 1, out);
            break;
        }
        case Expr::Kind::Ite:
            out += "ite(";
            render(*e.a, 0, out);
            out += ", ";
            render(*e.b, 0, out);
            out += ", ";
            render(*e.c, 0, out);
            out.push_back(')');
            break;
    }
    if (parens) out.push_back(')');
}

}  // namespace

std::string expr_to_string(const Expr& e) {
    std::string out;
    render(e, 0, out);
    return out;
}

}  // namespace causalex
