#include "causalex/serialize.hpp"

namespace causalex {

namespace {

std::string domain_text(const std::vector<Rational>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += values[i].str();
    }
    out += "}";
    return out;
}

}  // namespace

std::string serialize_model(const Model& m) {
    std::string out = "model " + m.name + "\n";
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        const Variable& v = m.vars[i];
        if (v.exogenous) {
            out += "exo " + v.name + ": " + domain_text(v.domain.values()) + "\n";
            continue;
        }
        out += "var " + v.name + ": ";
        if (v.auto_domain) {
            out += "auto";
            if (!v.auto_extra.empty()) out += " + " + domain_text(v.auto_extra);
        } else {
            out += domain_text(v.domain.values());
        }
        out += " = " + expr_to_string(*m.equation_of(static_cast<VarId>(i)).body) + "\n";
    }
    return out;
}

namespace {

int bool_prec(const BoolNode& n) {
    switch (n.kind) {
        case BoolNode::Kind::Or: return 1;
        case BoolNode::Kind::And: return 2;
        default: return 3;
    }
}

void render_bool(const BoolNode& n, int parent_prec, std::string& out) {
    int prec = bool_prec(n);
    bool parens = prec < parent_prec;
    if (parens) out.push_back('(');
    switch (n.kind) {
        case BoolNode::Kind::Atom:
            out += n.var + (n.negated ? " != " : " = ") + n.value.str();
            break;
        case BoolNode::Kind::Not:
            out += "!(";
            render_bool(*n.lhs, 0, out);
            out.push_back(')');
            break;
        case BoolNode::Kind::And:
            render_bool(*n.lhs, 2, out);
            out += " & ";
            render_bool(*n.rhs, 3, out);
            break;
        case BoolNode::Kind::Or:
            render_bool(*n.lhs, 1, out);
            out += " | ";
            render_bool(*n.rhs, 2, out);
            break;
    }
    if (parens) out.push_back(')');
}

}  // namespace

std::string serialize_formula(const CausalFormula& f) {
    std::string out;
    if (!f.interventions.empty()) {
        out += "[";
        for (std::size_t i = 0; i < f.interventions.size(); ++i) {
            if (i > 0) out += ", ";
            out += f.interventions[i].first + "<-" + f.interventions[i].second.str();
        }
        out += "]";
    }
    render_bool(*f.body, 0, out);
    return out;
}

bool model_equal(const Model& a, const Model& b) {
    if (a.name != b.name || a.vars.size() != b.vars.size()) return false;
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        const Variable& va = a.vars[i];
        const Variable& vb = b.vars[i];
        if (va.name != vb.name || va.exogenous != vb.exogenous) return false;
        if (va.domain.values() != vb.domain.values()) return false;
        if (!va.exogenous) {
            if (!expr_equal(*a.equation_of(static_cast<VarId>(i)).body,
                            *b.equation_of(static_cast<VarId>(i)).body)) {
                return false;
            }
        }
    }
    return true;
}

std::string assignment_to_string(const Assignment& a) {
    std::string out;
    for (const auto& [name, value] : a) {
        if (!out.empty()) out += ",";
        out += name + "=" + value.str();
    }
    return out;
}

}  // namespace causalex
