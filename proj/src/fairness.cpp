#include "causalex/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "causalex/detail/caches.hpp"
#include "causalex/detail/subsets.hpp"
#include "causalex/explanations.hpp"

namespace causalex {

bool PathSet::contains(const Path& p) const {
    return std::find(paths.begin(), paths.end(), p) != paths.end();
}

PathSet network_paths(const Model& m, const std::string& protected_var, const std::string& output,
                      const std::vector<std::string>& network, const Options& opts) {
    VarId a = m.require(protected_var);
    VarId y = m.require(output);
    std::vector<VarId> net;
    for (const auto& n : network) net.push_back(m.require(n));
    std::sort(net.begin(), net.end());

    ParentGraph g = parents(m, opts);
    PathSet out;
    for (Path& p : paths(m, g, a, y)) {
        bool inside = true;
        for (std::size_t i = 1; i < p.size(); ++i) {
            if (!std::binary_search(net.begin(), net.end(), m.require(p[i]))) {
                inside = false;
                break;
            }
        }
        if (inside) out.paths.push_back(std::move(p));
    }
    return out;
}

FairnessVerdict is_fair(const Model& m, const std::string& protected_var,
                        const PathSet& unfair_paths, const std::string& output,
                        const Options& opts) {
    VarId a = m.require(protected_var);
    VarId y = m.require(output);
    if (m.var(a).exogenous || m.var(y).exogenous) {
        throw DomainError("protected variable and output must be endogenous");
    }

    Options search = opts;
    search.all_evidence = true;  // every certifying explanation matters here
    Budget budget(opts.budget);

    std::vector<int> solved(m.vars.size(), -1);
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), solved);
        detail::solve_idx(m, nullptr, solved, budget);
        int a_actual = solved[static_cast<std::size_t>(a)];
        Assignment context = detail::to_assignment(m, m.exo, solved);
        Assignment x{{protected_var, m.var(a).domain.at(a_actual)}};
        const Rational y_value =
            m.var(y).domain.at(solved[static_cast<std::size_t>(y)]);

        for (std::size_t alt = 0; alt < m.var(a).domain.size(); ++alt) {
            if (static_cast<int>(alt) == a_actual) continue;
            Assignment xp{{protected_var, m.var(a).domain.at(static_cast<int>(alt))}};
            CauseResult r =
                detail::actual_cause_budgeted(m, context, x, xp, output, y_value, budget, search);
            if (!r.holds) continue;
            for (const CauseStatement& st : r.all) {
                PathSet pn = network_paths(m, protected_var, output, st.evidence.network, opts);
                bool included = true;
                for (const Path& p : pn.paths) {
                    if (!unfair_paths.contains(p)) {
                        included = false;
                        break;
                    }
                }
                if (!included) continue;
                FairnessVerdict verdict;
                verdict.fair = false;
                FairnessCertificate cert;
                cert.context = context;
                cert.protected_actual = m.var(a).domain.at(a_actual);
                cert.protected_contrast = m.var(a).domain.at(static_cast<int>(alt));
                cert.output_value = y_value;
                cert.cause = st;
                cert.network_path_set = std::move(pn);
                verdict.certificate = std::move(cert);
                return verdict;
            }
        }
    }
    return FairnessVerdict{true, std::nullopt};
}

StandardFairnessResult standardly_counterfactually_fair(const Model& m,
                                                        const std::string& protected_var,
                                                        const std::string& output,
                                                        const Options& opts) {
    VarId a = m.require(protected_var);
    VarId y = m.require(output);
    if (m.var(a).exogenous || m.var(y).exogenous) {
        throw DomainError("protected variable and output must be endogenous");
    }

    Budget budget(opts.budget);
    std::vector<int> solved(m.vars.size(), -1);
    std::vector<int> run(m.vars.size(), -1);
    for (detail::TupleIter ctx(m, m.exo); !ctx.done(); ctx.advance()) {
        detail::seed_context(m, ctx.current(), solved);
        detail::solve_idx(m, nullptr, solved, budget);
        int a_actual = solved[static_cast<std::size_t>(a)];
        int y_actual = solved[static_cast<std::size_t>(y)];
        for (std::size_t alt = 0; alt < m.var(a).domain.size(); ++alt) {
            if (static_cast<int>(alt) == a_actual) continue;
            detail::Overlay ov(m.vars.size());
            ov.set(a, static_cast<int>(alt));
            detail::seed_context(m, ctx.current(), run);
            detail::solve_idx(m, &ov, run, budget);
            if (run[static_cast<std::size_t>(y)] != y_actual) {
                StandardFairnessResult r;
                r.fair = false;
                r.certificate_context = detail::to_assignment(m, m.exo, solved);
                r.certificate_contrast = m.var(a).domain.at(static_cast<int>(alt));
                r.output_before = m.var(y).domain.at(y_actual);
                r.output_after = m.var(y).domain.at(run[static_cast<std::size_t>(y)]);
                return r;
            }
        }
    }
    StandardFairnessResult r;
    r.fair = true;
    return r;
}

std::optional<PathSet> parse_path_file(const std::string& text, const Model& m,
                                       const std::string& protected_var,
                                       const std::string& output,
                                       std::vector<Diagnostic>& diagnostics) {
    ParentGraph g = parents(m);
    auto is_edge = [&](VarId from, VarId to) {
        const auto& ch = g.children_of[static_cast<std::size_t>(from)];
        return std::binary_search(ch.begin(), ch.end(), to);
    };

    PathSet out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line.substr(0, line.find('#'));
        // Tokenize on "->".
        Path path;
        std::size_t pos = 0;
        bool blank = true;
        for (char c : stripped) {
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        }
        if (blank) continue;
        while (pos <= stripped.size()) {
            std::size_t arrow = stripped.find("->", pos);
            std::string part = stripped.substr(pos, arrow == std::string::npos
                                                        ? std::string::npos
                                                        : arrow - pos);
            // trim
            std::size_t b = part.find_first_not_of(" \t\r");
            std::size_t e = part.find_last_not_of(" \t\r");
            if (b == std::string::npos) {
                Diagnostic d;
                d.message = "empty vertex in path";
                d.line = line_no;
                d.column = static_cast<int>(pos) + 1;
                diagnostics.push_back(d);
                return std::nullopt;
            }
            path.push_back(part.substr(b, e - b + 1));
            if (arrow == std::string::npos) break;
            pos = arrow + 2;
        }
        for (const auto& v : path) {
            if (m.id_of(v) < 0) {
                Diagnostic d;
                d.message = "unknown variable '" + v + "' in unfair-path file";
                d.line = line_no;
                diagnostics.push_back(d);
                return std::nullopt;
            }
        }
        if (path.front() != protected_var || path.back() != output) {
            Diagnostic d;
            d.message = "path must run from '" + protected_var + "' to '" + output + "'";
            d.line = line_no;
            diagnostics.push_back(d);
            return std::nullopt;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            if (!is_edge(m.require(path[i]), m.require(path[i + 1]))) {
                Diagnostic d;
                d.message = "'" + path[i] + " -> " + path[i + 1] +
                            "' is not an edge of the model's parent graph";
                d.line = line_no;
                diagnostics.push_back(d);
                return std::nullopt;
            }
        }
        out.paths.push_back(std::move(path));
    }
    return out;
}

}  // namespace causalex
