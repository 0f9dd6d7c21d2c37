#include "causalex/generator.hpp"

#include <algorithm>
#include <stdexcept>

namespace causalex {

namespace {

// Nested ite chain over the dependency tuple; the last value of each
// variable is the default branch, keeping the expression total.
ExprPtr table_expr(const std::vector<std::string>& deps,
                   const std::vector<std::vector<Rational>>& dep_domains,
                   const std::vector<Rational>& table, std::size_t depth, std::size_t base) {
    if (depth == deps.size()) return Expr::lit(table[base]);
    const auto& dom = dep_domains[depth];
    std::size_t stride = 1;  // cells per value of this variable (row-major)
    for (std::size_t d = depth + 1; d < deps.size(); ++d) stride *= dep_domains[d].size();
    ExprPtr chain = table_expr(deps, dep_domains, table, depth + 1,
                               base + (dom.size() - 1) * stride);
    for (std::size_t k = dom.size() - 1; k-- > 0;) {
        ExprPtr cond = Expr::binary(BinaryOp::Eq, Expr::ref(deps[depth]), Expr::lit(dom[k]));
        ExprPtr branch = table_expr(deps, dep_domains, table, depth + 1, base + k * stride);
        chain = Expr::ite(cond, branch, chain);
    }
    return chain;
}

}  // namespace

GeneratedModel random_model(const GeneratorConfig& config) {
    GeneratorConfig cfg = config;
    cfg.n_endogenous = std::clamp(cfg.n_endogenous, 1, 6);
    cfg.min_domain = std::clamp(cfg.min_domain, 2, 4);
    cfg.max_domain = std::clamp(cfg.max_domain, cfg.min_domain, 4);
    SplitMix64 rng(cfg.seed);

    const int n = cfg.n_endogenous;
    std::vector<int> domain_size(static_cast<std::size_t>(n));
    for (auto& s : domain_size) {
        s = cfg.min_domain +
            static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_domain - cfg.min_domain + 1)));
    }

    // Random topological order over V1..Vn.
    std::vector<int> topo(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) topo[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = topo.size(); i > 1; --i) {
        std::swap(topo[i - 1], topo[rng.below(i)]);
    }

    ModelSource src;
    src.name = "random" + std::to_string(cfg.seed);

    std::vector<std::vector<Rational>> domains(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < domain_size[static_cast<std::size_t>(i)]; ++k) {
            domains[static_cast<std::size_t>(i)].push_back(Rational(k));
        }
    }

    const bool independence = cfg.mode == GeneratorConfig::Mode::Independence;
    const int output = topo.back();
    std::uint64_t contexts = 1;

    struct Planned {
        bool root = false;
        std::vector<int> deps;  // endogenous indices, topologically earlier
    };
    std::vector<Planned> plan(static_cast<std::size_t>(n));

    for (std::size_t pos = 0; pos < topo.size(); ++pos) {
        int v = topo[pos];
        Planned& p = plan[static_cast<std::size_t>(v)];
        std::uint64_t grown = contexts * static_cast<std::uint64_t>(domain_size[v]);
        if (independence) {
            // Inputs are root-form so every observation is realizable; the
            // output is a table over all of them.
            if (v != output) {
                p.root = true;
            } else {
                for (std::size_t q = 0; q < pos; ++q) p.deps.push_back(topo[q]);
            }
        } else {
            bool can_root = grown <= cfg.max_contexts;
            bool want_root = rng.chance(cfg.root_prob);
            if (can_root && (want_root || pos == 0)) {
                p.root = true;
            } else {
                for (std::size_t q = 0; q < pos; ++q) {
                    if (rng.chance(0.6)) p.deps.push_back(topo[q]);
                }
            }
        }
        if (p.root) contexts = grown;
    }

    // Declarations in V1..Vn order; exogenous partners first.
    for (int v = 0; v < n; ++v) {
        if (!plan[static_cast<std::size_t>(v)].root) continue;
        SourceDecl exo;
        exo.exogenous = true;
        exo.name = "U" + std::to_string(v + 1);
        exo.domain = domains[static_cast<std::size_t>(v)];
        src.decls.push_back(std::move(exo));
    }
    for (int v = 0; v < n; ++v) {
        const Planned& p = plan[static_cast<std::size_t>(v)];
        SourceDecl decl;
        decl.name = "V" + std::to_string(v + 1);
        decl.domain = domains[static_cast<std::size_t>(v)];
        if (p.root) {
            decl.equation = Expr::ref("U" + std::to_string(v + 1));
        } else {
            std::vector<std::string> dep_names;
            std::vector<std::vector<Rational>> dep_domains;
            std::size_t rows = 1;
            for (int d : p.deps) {
                dep_names.push_back("V" + std::to_string(d + 1));
                dep_domains.push_back(domains[static_cast<std::size_t>(d)]);
                rows *= domains[static_cast<std::size_t>(d)].size();
            }
            std::vector<Rational> table(rows);
            for (auto& cell : table) {
                cell = domains[static_cast<std::size_t>(v)]
                              [rng.below(static_cast<std::uint64_t>(domain_size[v]))];
            }
            decl.equation = table_expr(dep_names, dep_domains, table, 0, 0);
        }
        src.decls.push_back(std::move(decl));
    }

    ModelResult compiled = compile_model(src);
    if (!compiled.ok()) {
        std::string detail;
        for (const auto& d : compiled.diagnostics) detail += d.render() + "; ";
        throw std::logic_error("generated model failed validation: " + detail);
    }
    GeneratedModel out;
    out.model = std::move(*compiled.model);
    out.output = "V" + std::to_string(output + 1);
    return out;
}

}  // namespace causalex
