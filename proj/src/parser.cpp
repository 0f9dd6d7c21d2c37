#include "causalex/parser.hpp"

#include <cctype>
#include <set>

namespace causalex {

namespace {

enum class Tok {
    Ident, Number, Newline, End,
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Comma, Colon, Plus, Minus, Star, Slash,
    Eq, Ne, Lt, Le, Gt, Ge, Not, And, Or, Arrow,  // Arrow is "<-"
};

struct Token {
    Tok kind;
    std::string text;
    int line = 1, column = 1;
};

class Lexer {
public:
    Lexer(const std::string& src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                // Collapse runs of newlines into one token.
                if (out.empty() || out.back().kind != Tok::Newline) {
                    out.push_back(make(Tok::Newline, "\\n"));
                }
                ++pos_;
                ++line_;
                col_ = 1;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                bump();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(number());
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(ident());
                continue;
            }
            out.push_back(punct());
        }
        out.push_back(make(Tok::End, ""));
        return out;
    }

private:
    Token make(Tok kind, std::string text) const { return Token{kind, std::move(text), line_, col_}; }

    void bump() {
        ++pos_;
        ++col_;
    }

    Token number() {
        Token t = make(Tok::Number, "");
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            t.text.push_back(src_[pos_]);
            bump();
        }
        return t;
    }

    Token ident() {
        Token t = make(Tok::Ident, "");
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_')) {
            t.text.push_back(src_[pos_]);
            bump();
        }
        return t;
    }

    Token punct() {
        auto two = [&](char a, char b) {
            return src_[pos_] == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        Token t = make(Tok::End, std::string(1, src_[pos_]));
        if (two('!', '=')) { t.kind = Tok::Ne; t.text = "!="; bump(); bump(); return t; }
        if (two('<', '=')) { t.kind = Tok::Le; t.text = "<="; bump(); bump(); return t; }
        if (two('>', '=')) { t.kind = Tok::Ge; t.text = ">="; bump(); bump(); return t; }
        if (two('<', '-')) { t.kind = Tok::Arrow; t.text = "<-"; bump(); bump(); return t; }
        switch (src_[pos_]) {
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '[': t.kind = Tok::LBracket; break;
            case ']': t.kind = Tok::RBracket; break;
            case ',': t.kind = Tok::Comma; break;
            case ':': t.kind = Tok::Colon; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            case '=': t.kind = Tok::Eq; break;
            case '!': t.kind = Tok::Not; break;
            case '<': t.kind = Tok::Lt; break;
            case '>': t.kind = Tok::Gt; break;
            case '&': t.kind = Tok::And; break;
            case '|': t.kind = Tok::Or; break;
            default: {
                Diagnostic d;
                d.message = std::string("unexpected character '") + src_[pos_] + "'";
                d.line = line_;
                d.column = col_;
                diags_.push_back(d);
                bump();
                return punct_skip();
            }
        }
        bump();
        return t;
    }

    Token punct_skip() {
        // After an unexpected character, resynchronize on the next token.
        if (pos_ >= src_.size()) return make(Tok::End, "");
        return make(Tok::Newline, "\\n");
    }

    const std::string& src_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags) {}

    const Token& peek() const { return toks_[pos_]; }
    const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

    bool at(Tok k) const { return peek().kind == k; }

    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    bool expect(Tok k, const std::string& what) {
        if (accept(k)) return true;
        error("expected " + what);
        return false;
    }

    void error(const std::string& msg) {
        Diagnostic d;
        d.message = msg;
        d.line = peek().line;
        d.column = peek().column;
        d.span = peek().text;
        diags_.push_back(d);
    }

    void sync_to_newline() {
        while (!at(Tok::Newline) && !at(Tok::End)) ++pos_;
        accept(Tok::Newline);
    }

    // value = ["-"] (INT | INT "/" INT | DECIMAL). Used in domain lists,
    // interventions and assignment literals, where "3/10" is one token
    // pair forming a single rational. Inside expressions "/" stays an
    // operator and literal folding produces the same rational.
    std::optional<Rational> value() {
        bool neg = accept(Tok::Minus);
        if (!at(Tok::Number)) {
            error("expected a numeric value");
            return std::nullopt;
        }
        Token t = peek();
        ++pos_;
        std::string text = t.text;
        if (at(Tok::Slash) && pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tok::Number) {
            ++pos_;
            text += "/" + peek().text;
            ++pos_;
        }
        return finish_value(t, text, neg);
    }

    // A bare numeric literal in expression position (no "/" fusion).
    std::optional<Rational> number_only() {
        Token t = peek();
        ++pos_;
        return finish_value(t, t.text, false);
    }

    std::optional<Rational> finish_value(const Token& t, const std::string& text, bool neg) {
        try {
            Rational r = Rational::parse(text);
            return neg ? -r : r;
        } catch (const RationalError& e) {
            Diagnostic d;
            d.message = e.what();
            d.line = t.line;
            d.column = t.column;
            d.span = text;
            diags_.push_back(d);
            return std::nullopt;
        }
    }

    std::optional<std::vector<Rational>> domain() {
        if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
        std::vector<Rational> vals;
        do {
            auto v = value();
            if (!v) return std::nullopt;
            vals.push_back(*v);
        } while (accept(Tok::Comma));
        if (!expect(Tok::RBrace, "'}'")) return std::nullopt;
        return vals;
    }

    // --- expression grammar ---------------------------------------------

    ExprPtr expr() { return or_(); }

    ExprPtr or_() {
        ExprPtr lhs = and_();
        while (lhs && accept(Tok::Or)) {
            ExprPtr rhs = and_();
            if (!rhs) return nullptr;
            lhs = Expr::binary(BinaryOp::Or, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr and_() {
        ExprPtr lhs = not_();
        while (lhs && accept(Tok::And)) {
            ExprPtr rhs = not_();
            if (!rhs) return nullptr;
            lhs = Expr::binary(BinaryOp::And, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr not_() {
        if (accept(Tok::Not)) {
            ExprPtr x = cmp();
            return x ? Expr::unary(UnaryOp::Not, x) : nullptr;
        }
        return cmp();
    }

    ExprPtr cmp() {
        ExprPtr lhs = add();
        if (!lhs) return nullptr;
        BinaryOp op;
        if (accept(Tok::Eq)) op = BinaryOp::Eq;
        else if (accept(Tok::Ne)) op = BinaryOp::Ne;
        else if (accept(Tok::Lt)) op = BinaryOp::Lt;
        else if (accept(Tok::Le)) op = BinaryOp::Le;
        else if (accept(Tok::Gt)) op = BinaryOp::Gt;
        else if (accept(Tok::Ge)) op = BinaryOp::Ge;
        else return lhs;
        ExprPtr rhs = add();
        return rhs ? Expr::binary(op, lhs, rhs) : nullptr;
    }

    ExprPtr add() {
        ExprPtr lhs = mul();
        while (lhs && (at(Tok::Plus) || at(Tok::Minus))) {
            BinaryOp op = accept(Tok::Plus) ? BinaryOp::Add
                                            : (accept(Tok::Minus), BinaryOp::Sub);
            ExprPtr rhs = mul();
            if (!rhs) return nullptr;
            lhs = Expr::binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr mul() {
        ExprPtr lhs = unary();
        while (lhs && (at(Tok::Star) || at(Tok::Slash))) {
            Token op_tok = peek();
            BinaryOp op = accept(Tok::Star) ? BinaryOp::Mul
                                            : (accept(Tok::Slash), BinaryOp::Div);
            ExprPtr rhs = unary();
            if (!rhs) return nullptr;
            // Fold literal/literal division so "3/10" is the exact rational
            // 3/10 in the tree, matching the value syntax of domains.
            if (op == BinaryOp::Div && lhs->kind == Expr::Kind::Literal &&
                rhs->kind == Expr::Kind::Literal) {
                if (rhs->literal.is_zero()) {
                    Diagnostic d;
                    d.message = "division by zero in constant";
                    d.line = op_tok.line;
                    d.column = op_tok.column;
                    diags_.push_back(d);
                    return nullptr;
                }
                lhs = Expr::lit(lhs->literal / rhs->literal);
                continue;
            }
            lhs = Expr::binary(op, lhs, rhs);
        }
        return lhs;
    }

    ExprPtr unary() {
        if (accept(Tok::Minus)) {
            ExprPtr x = atom();
            return x ? Expr::unary(UnaryOp::Neg, x) : nullptr;
        }
        return atom();
    }

    ExprPtr atom() {
        if (at(Tok::Number)) {
            auto v = number_only();
            return v ? Expr::lit(*v) : nullptr;
        }
        if (at(Tok::Ident)) {
            Token t = peek();
            ++pos_;
            if (t.text == "ite") {
                if (!expect(Tok::LParen, "'(' after ite")) return nullptr;
                ExprPtr c = expr();
                if (!c || !expect(Tok::Comma, "','")) return nullptr;
                ExprPtr a = expr();
                if (!a || !expect(Tok::Comma, "','")) return nullptr;
                ExprPtr b = expr();
                if (!b || !expect(Tok::RParen, "')'")) return nullptr;
                return Expr::ite(c, a, b);
            }
            return Expr::ref(t.text);
        }
        if (accept(Tok::LParen)) {
            ExprPtr inner = expr();
            if (!inner || !expect(Tok::RParen, "')'")) return nullptr;
            return inner;
        }
        error("expected a value, variable, '(' or ite(...)");
        return nullptr;
    }

    std::size_t pos_ = 0;
    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
};

}  // namespace

ModelResult parse_model(const std::string& text, const Options& opts) {
    ModelResult result;
    Lexer lex(text, result.diagnostics);
    Parser p(lex.run(), result.diagnostics);

    ModelSource src;
    p.accept(Tok::Newline);
    if (!p.at(Tok::Ident) || p.peek().text != "model") {
        p.error("expected 'model NAME' header");
        return result;
    }
    p.accept(Tok::Ident);
    if (!p.at(Tok::Ident)) {
        p.error("expected model name");
        return result;
    }
    src.name = p.peek().text;
    p.accept(Tok::Ident);
    if (!p.at(Tok::End)) p.expect(Tok::Newline, "newline after model header");

    while (!p.at(Tok::End)) {
        if (p.accept(Tok::Newline)) continue;
        if (!p.at(Tok::Ident)) {
            p.error("expected 'exo' or 'var' declaration");
            p.sync_to_newline();
            continue;
        }
        std::string kw = p.peek().text;
        if (kw != "exo" && kw != "var") {
            p.error("expected 'exo' or 'var', got '" + kw + "'");
            p.sync_to_newline();
            continue;
        }
        SourceDecl decl;
        decl.exogenous = kw == "exo";
        decl.line = p.peek().line;
        decl.column = p.peek().column;
        p.accept(Tok::Ident);
        if (!p.at(Tok::Ident)) {
            p.error("expected variable name");
            p.sync_to_newline();
            continue;
        }
        decl.name = p.peek().text;
        p.accept(Tok::Ident);
        if (!p.expect(Tok::Colon, "':'")) {
            p.sync_to_newline();
            continue;
        }
        bool bad = false;
        if (!decl.exogenous && p.at(Tok::Ident) && p.peek().text == "auto") {
            p.accept(Tok::Ident);
            decl.auto_domain = true;
            if (p.accept(Tok::Plus)) {
                auto extra = p.domain();
                if (!extra) bad = true;
                else decl.auto_extra = *extra;
            }
        } else {
            auto dom = p.domain();
            if (!dom) bad = true;
            else decl.domain = *dom;
        }
        if (!bad && !decl.exogenous) {
            if (!p.expect(Tok::Eq, "'=' before the structural equation")) {
                bad = true;
            } else {
                decl.equation = p.expr();
                if (!decl.equation) bad = true;
            }
        }
        if (bad) {
            p.sync_to_newline();
            continue;
        }
        if (!p.at(Tok::End) && !p.expect(Tok::Newline, "end of declaration")) {
            p.sync_to_newline();
        }
        src.decls.push_back(std::move(decl));
    }

    if (has_error(result.diagnostics)) return result;

    ModelResult compiled = compile_model(src, opts);
    for (auto& d : compiled.diagnostics) result.diagnostics.push_back(d);
    result.model = std::move(compiled.model);
    return result;
}

namespace {

// bool  = bor ; bor = band {"|" band} ; band = bnot {"&" bnot} ;
// bnot  = ["!"] batom ; batom = IDENT ("="|"!=") value | "(" bool ")"
class FormulaParser : public Parser {
public:
    FormulaParser(std::vector<Token> toks, const Model& m, std::vector<Diagnostic>& diags)
        : Parser(std::move(toks), diags), model_(m) {}

    std::optional<CausalFormula> run() {
        CausalFormula f;
        if (accept(Tok::LBracket)) {
            std::set<std::string> seen;
            do {
                if (!at(Tok::Ident)) {
                    error("expected variable name in intervention");
                    return std::nullopt;
                }
                Token name = peek();
                ++pos_;
                if (!expect(Tok::Arrow, "'<-'")) return std::nullopt;
                auto v = value();
                if (!v) return std::nullopt;
                if (!check_endogenous(name, *v)) return std::nullopt;
                if (!seen.insert(name.text).second) {
                    Diagnostic d;
                    d.message = "duplicate intervention on '" + name.text + "'";
                    d.line = name.line;
                    d.column = name.column;
                    diags_.push_back(d);
                    return std::nullopt;
                }
                f.interventions.emplace_back(name.text, *v);
            } while (accept(Tok::Comma));
            if (!expect(Tok::RBracket, "']'")) return std::nullopt;
        }
        f.body = bor();
        if (!f.body) return std::nullopt;
        accept(Tok::Newline);
        if (!at(Tok::End)) {
            error("unexpected trailing input");
            return std::nullopt;
        }
        return f;
    }

private:
    bool check_endogenous(const Token& name, const Rational& v) {
        VarId id = model_.id_of(name.text);
        if (id < 0) {
            Diagnostic d;
            d.message = "unknown variable '" + name.text + "'";
            d.line = name.line;
            d.column = name.column;
            diags_.push_back(d);
            return false;
        }
        if (model_.var(id).exogenous) {
            Diagnostic d;
            d.message = "'" + name.text + "' is exogenous; formulas range over endogenous variables";
            d.line = name.line;
            d.column = name.column;
            diags_.push_back(d);
            return false;
        }
        if (!model_.var(id).domain.contains(v)) {
            Diagnostic d;
            d.message = "value " + v.str() + " is not in the domain of '" + name.text + "'";
            d.line = name.line;
            d.column = name.column;
            diags_.push_back(d);
            return false;
        }
        return true;
    }

    BoolPtr bor() {
        BoolPtr lhs = band();
        while (lhs && accept(Tok::Or)) {
            BoolPtr rhs = band();
            if (!rhs) return nullptr;
            lhs = BoolNode::disj(lhs, rhs);
        }
        return lhs;
    }

    BoolPtr band() {
        BoolPtr lhs = bnot();
        while (lhs && accept(Tok::And)) {
            BoolPtr rhs = bnot();
            if (!rhs) return nullptr;
            lhs = BoolNode::conj(lhs, rhs);
        }
        return lhs;
    }

    BoolPtr bnot() {
        if (accept(Tok::Not)) {
            BoolPtr x = batom();
            return x ? BoolNode::negate(x) : nullptr;
        }
        return batom();
    }

    BoolPtr batom() {
        if (accept(Tok::LParen)) {
            BoolPtr inner = bor();
            if (!inner || !expect(Tok::RParen, "')'")) return nullptr;
            return inner;
        }
        if (!at(Tok::Ident)) {
            error("expected 'VAR = value' or 'VAR != value'");
            return nullptr;
        }
        Token name = peek();
        ++pos_;
        bool negated;
        if (accept(Tok::Eq)) negated = false;
        else if (accept(Tok::Ne)) negated = true;
        else {
            error("expected '=' or '!=' after '" + name.text + "'");
            return nullptr;
        }
        auto v = value();
        if (!v) return nullptr;
        if (!check_endogenous(name, *v)) return nullptr;
        return BoolNode::atom(name.text, *v, negated);
    }

    const Model& model_;
};

}  // namespace

FormulaResult parse_formula(const std::string& text, const Model& model) {
    FormulaResult result;
    Lexer lex(text, result.diagnostics);
    FormulaParser p(lex.run(), model, result.diagnostics);
    auto f = p.run();
    if (!has_error(result.diagnostics)) result.formula = std::move(f);
    return result;
}

std::optional<Assignment> parse_assignment(const std::string& text,
                                           std::vector<Diagnostic>& diagnostics) {
    Assignment out;
    Lexer lex(text, diagnostics);
    Parser p(lex.run(), diagnostics);
    p.accept(Tok::Newline);
    if (p.at(Tok::End)) return out;  // empty assignment is legal
    do {
        if (!p.at(Tok::Ident)) {
            p.error("expected variable name");
            return std::nullopt;
        }
        std::string name = p.peek().text;
        p.accept(Tok::Ident);
        if (!p.expect(Tok::Eq, "'='")) return std::nullopt;
        auto v = p.value();
        if (!v) return std::nullopt;
        if (out.count(name) != 0) {
            p.error("variable '" + name + "' assigned twice");
            return std::nullopt;
        }
        out[name] = *v;
    } while (p.accept(Tok::Comma));
    p.accept(Tok::Newline);
    if (!p.at(Tok::End)) {
        p.error("unexpected trailing input");
        return std::nullopt;
    }
    return out;
}

}  // namespace causalex
