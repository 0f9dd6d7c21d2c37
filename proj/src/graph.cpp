#include "causalex/graph.hpp"

#include <algorithm>
#include <set>

namespace causalex {

std::vector<std::pair<std::string, std::string>> ParentGraph::edges(const Model& m) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t p = 0; p < children_of.size(); ++p) {
        for (VarId c : children_of[p]) {
            out.emplace_back(m.var(static_cast<VarId>(p)).name, m.var(c).name);
        }
    }
    return out;
}

ParentGraph parents(const Model& m, const Options& opts) {
    Budget budget(opts.budget);
    ParentGraph g;
    g.parents_of.assign(m.vars.size(), {});
    g.children_of.assign(m.vars.size(), {});

    for (const Equation& eq : m.equations) {
        // For each candidate parent: does the table vary along its axis for
        // some fixed setting of the remaining referenced variables?
        for (std::size_t d = 0; d < eq.deps.size(); ++d) {
            std::size_t dom = m.var(eq.deps[d]).domain.size();
            std::size_t stride = eq.stride[d];
            std::size_t total = eq.table.size();
            bool varies = false;
            // Walk all cells with axis-d index 0; compare along the axis.
            std::size_t block = stride * dom;
            for (std::size_t base = 0; base < total && !varies; base += block) {
                for (std::size_t off = 0; off < stride && !varies; ++off) {
                    std::size_t first = base + off;
                    budget.charge();
                    int v0 = eq.table[first];
                    for (std::size_t k = 1; k < dom; ++k) {
                        budget.charge();
                        if (eq.table[first + k * stride] != v0) {
                            varies = true;
                            break;
                        }
                    }
                }
            }
            if (varies) {
                g.parents_of[static_cast<std::size_t>(eq.target)].push_back(eq.deps[d]);
                g.children_of[static_cast<std::size_t>(eq.deps[d])].push_back(eq.target);
            }
        }
    }
    for (auto& v : g.parents_of) std::sort(v.begin(), v.end());
    for (auto& v : g.children_of) std::sort(v.begin(), v.end());
    return g;
}

namespace {

void reach(const std::vector<std::vector<VarId>>& adj, VarId start, std::set<VarId>& seen) {
    for (VarId next : adj[static_cast<std::size_t>(start)]) {
        if (seen.insert(next).second) reach(adj, next, seen);
    }
}

std::vector<std::string> names_of(const Model& m, const std::set<VarId>& ids) {
    std::vector<std::string> out;
    for (VarId v : ids) out.push_back(m.var(v).name);
    return out;
}

}  // namespace

std::vector<std::string> ancestors(const Model& m, const std::string& var, const Options& opts) {
    VarId id = m.require(var);
    ParentGraph g = parents(m, opts);
    std::set<VarId> seen;
    reach(g.parents_of, id, seen);
    return names_of(m, seen);
}

std::vector<std::string> descendants(const Model& m, const std::string& var, const Options& opts) {
    VarId id = m.require(var);
    ParentGraph g = parents(m, opts);
    std::set<VarId> seen;
    reach(g.children_of, id, seen);
    return names_of(m, seen);
}

namespace {

void dfs_paths(const Model& m, const ParentGraph& g, VarId at, VarId to,
               std::vector<VarId>& stack, std::vector<Path>& out) {
    stack.push_back(at);
    if (at == to) {
        Path p;
        for (VarId v : stack) p.push_back(m.var(v).name);
        out.push_back(std::move(p));
    } else {
        for (VarId next : g.children_of[static_cast<std::size_t>(at)]) {
            dfs_paths(m, g, next, to, stack, out);
        }
    }
    stack.pop_back();
}

}  // namespace

std::vector<Path> paths(const Model& m, const ParentGraph& g, VarId from, VarId to) {
    std::vector<Path> out;
    std::vector<VarId> stack;
    dfs_paths(m, g, from, to, stack, out);
    return out;
}

std::vector<Path> paths(const Model& m, const std::string& from, const std::string& to,
                        const Options& opts) {
    VarId f = m.require(from);
    VarId t = m.require(to);
    ParentGraph g = parents(m, opts);
    return paths(m, g, f, t);
}

std::vector<VarId> root_ids(const Model& m) {
    std::vector<VarId> out;
    for (const Equation& eq : m.equations) {
        if (eq.body->kind == Expr::Kind::Var) {
            VarId ref = m.id_of(eq.body->var);
            if (ref >= 0 && m.var(ref).exogenous) out.push_back(eq.target);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> roots(const Model& m) {
    std::vector<std::string> out;
    for (VarId v : root_ids(m)) out.push_back(m.var(v).name);
    return out;
}

}  // namespace causalex
