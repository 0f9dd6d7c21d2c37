// causalex — query CLI for finite-domain structural causal models:
// solving, interventions, sufficiency, explanations, causation, fairness
// and the random-model theorem harness.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "causalex/json_io.hpp"
#include "causalex/oracle.hpp"
#include "causalex/parser.hpp"
#include "causalex/serialize.hpp"

namespace {

using namespace causalex;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitBudget = 5;
constexpr int kExitInternal = 6;

struct CliError {
    int code;
    json payload;
};

json diagnostics_json(const std::vector<Diagnostic>& diags) {
    json arr = json::array();
    for (const auto& d : diags) {
        json one;
        one["severity"] = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
        one["message"] = d.message;
        one["line"] = d.line;
        one["column"] = d.column;
        if (!d.span.empty()) one["span"] = d.span;
        arr.push_back(one);
    }
    return arr;
}

int diagnostics_exit_code(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        if (d.severity == Diagnostic::Severity::Error &&
            d.phase == Diagnostic::Phase::Validate) {
            return kExitValidation;
        }
    }
    return kExitParse;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError{kExitUsage, json{{"status", "error"},
                                        {"error", "cannot open file '" + path + "'"}}};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Implicit loads run under the default budget; --budget caps the
// requested operation itself (and validation only under `validate`).
Model load_model(const std::string& path) {
    ModelResult r = parse_model(read_file(path));
    if (!r.ok()) {
        throw CliError{diagnostics_exit_code(r.diagnostics),
                       json{{"status", "error"},
                            {"error", "model rejected"},
                            {"diagnostics", diagnostics_json(r.diagnostics)}}};
    }
    return std::move(*r.model);
}

Assignment parse_assignment_or_throw(const std::string& text, const std::string& what) {
    std::vector<Diagnostic> diags;
    auto a = parse_assignment(text, diags);
    if (!a) {
        throw CliError{kExitParse, json{{"status", "error"},
                                        {"error", "cannot parse " + what},
                                        {"diagnostics", diagnostics_json(diags)}}};
    }
    return *a;
}

// "--target Y=1"
std::pair<std::string, Rational> parse_target(const std::string& text) {
    Assignment a = parse_assignment_or_throw(text, "target");
    if (a.size() != 1) {
        throw CliError{kExitUsage,
                       json{{"status", "error"}, {"error", "target must be a single VAR=value"}}};
    }
    return {a.begin()->first, a.begin()->second};
}

void emit(const json& payload, bool json_mode) {
    if (json_mode) {
        std::cout << payload.dump() << "\n";
    } else {
        std::cout << payload.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-domain structural-causal-model query engine"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    bool json_mode = false;
    std::uint64_t budget = kDefaultBudget;
    app.add_flag("--json", json_mode, "emit one compact JSON document on stdout");
    CLI::Option* budget_opt =
        app.add_option("--budget", budget, "enumeration budget (assignments per operation)");

    std::string model_path, context_str, formula_str, target_str, x_str, xprime_str;
    std::string protected_var, paths_file, theorem_str, mode_str;
    bool universal = false, good_only = false, standard_fairness = false;
    bool all_evidence = false;
    std::uint64_t seed = 1;
    int trials = 200;
    int max_endo = 4;
    int max_domain = 3;

    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_path, "model DSL file")->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a model");
    add_model(validate);

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a model in a context");
    add_model(solve_cmd);
    solve_cmd->add_option("--context", context_str, "context, e.g. \"U1=75000,U3=2500\"")
        ->required();

    CLI::App* query = app.add_subcommand("query", "evaluate a causal formula");
    add_model(query);
    query->add_option("formula", formula_str, "e.g. \"[X2<-45001](Y=1)\"")->required();
    CLI::Option* query_ctx =
        query->add_option("--context", context_str, "context (omit with --universal)");
    query->add_flag("--universal", universal, "check all contexts (M |= f)");

    CLI::App* explain = app.add_subcommand("explain", "enumerate explanations");
    explain->require_subcommand(1);
    CLI::App* explain_suff = explain->add_subcommand("sufficient", "sufficient explanations");
    add_model(explain_suff);
    explain_suff->add_option("--context", context_str)->required();
    explain_suff->add_option("--target", target_str, "e.g. Y=1")->required();
    explain_suff->add_flag("--good", good_only, "only non-dominated explanations");
    CLI::App* explain_cf =
        explain->add_subcommand("counterfactual", "good counterfactual explanations");
    add_model(explain_cf);
    explain_cf->add_option("--context", context_str)->required();
    explain_cf->add_option("--target", target_str, "e.g. Y=0")->required();

    CLI::App* cause = app.add_subcommand("cause", "causation queries");
    cause->require_subcommand(1);
    cause->add_flag("--all-evidence", all_evidence,
                    "report every certifying explanation, not just the canonical first");
    CLI::App* cause_actual = cause->add_subcommand("actual", "contrastive actual cause");
    add_model(cause_actual);
    cause_actual->add_option("--context", context_str)->required();
    cause_actual->add_option("--x", x_str, "cause, e.g. \"X1=250000\"")->required();
    cause_actual->add_option("--xprime", xprime_str, "contrast values")->required();
    cause_actual->add_option("--target", target_str)->required();
    CLI::App* cause_optimal = cause->add_subcommand("optimal", "optimal cause");
    add_model(cause_optimal);
    cause_optimal->add_option("--context", context_str)->required();
    cause_optimal->add_option("--x", x_str)->required();
    cause_optimal->add_option("--target", target_str)->required();
    CLI::App* cause_direct = cause->add_subcommand("direct", "direct cause");
    add_model(cause_direct);
    cause_direct->add_option("--context", context_str)->required();
    cause_direct->add_option("--x", x_str)->required();
    cause_direct->add_option("--target", target_str)->required();

    CLI::App* fairness = app.add_subcommand("fairness", "path-specific fairness audit");
    add_model(fairness);
    fairness->add_option("--protected", protected_var, "protected variable")->required();
    fairness->add_option("--target", target_str, "output variable, e.g. Y")->required();
    fairness->add_option("--unfair-paths", paths_file, "file with one 'A -> ... -> Y' per line");
    fairness->add_flag("--standard", standard_fairness,
                       "check standard counterfactual fairness instead");

    CLI::App* verify = app.add_subcommand("verify-theorems", "random-model theorem harness");
    verify->add_option("--theorem", theorem_str,
                       "prop9|thm12|thm16|thm17|prop19|thm21|prop24|thm25|obs1 (default: all)");
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--trials", trials, "trials per theorem");
    verify->add_option("--mode", mode_str, "general|independence (default per theorem)");
    verify->add_option("--max-endo", max_endo, "largest endogenous variable count");
    verify->add_option("--max-domain", max_domain, "largest domain size (2..4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (!*budget_opt) {
        if (const char* env = std::getenv("CAUSALEX_BUDGET")) {
            char* end = nullptr;
            std::uint64_t v = std::strtoull(env, &end, 10);
            if (end != nullptr && *end == '\0' && v > 0) budget = v;
        }
    }
    Options opts;
    opts.budget = budget;
    opts.all_evidence = all_evidence;

    try {
        json payload;
        if (*validate) {
            ModelResult r = parse_model(read_file(model_path), opts);
            if (!r.ok()) {
                payload["status"] = "error";
                payload["error"] = "model rejected";
                payload["diagnostics"] = diagnostics_json(r.diagnostics);
                emit(payload, json_mode);
                return diagnostics_exit_code(r.diagnostics);
            }
            payload["status"] = "ok";
            payload["model"] = r.model->name;
            payload["exogenous"] = json::array();
            payload["endogenous"] = json::array();
            for (VarId v : r.model->exo) payload["exogenous"].push_back(r.model->var(v).name);
            for (VarId v : r.model->endo) payload["endogenous"].push_back(r.model->var(v).name);
            payload["contexts"] = r.model->context_count();
        } else if (*solve_cmd) {
            Model m = load_model(model_path);
            Assignment ctx = parse_assignment_or_throw(context_str, "context");
            payload["status"] = "ok";
            payload["assignment"] = to_json(solve(m, ctx, opts));
        } else if (*query) {
            Model m = load_model(model_path);
            FormulaResult f = parse_formula(formula_str, m);
            if (!f.ok()) {
                payload["status"] = "error";
                payload["error"] = "formula rejected";
                payload["diagnostics"] = diagnostics_json(f.diagnostics);
                emit(payload, json_mode);
                return kExitParse;
            }
            payload["status"] = "ok";
            payload["formula"] = serialize_formula(*f.formula);
            if (universal) {
                UniversalResult r = holds_universally(m, *f.formula, opts);
                payload["holds"] = r.holds;
                if (r.counterexample) payload["counterexample"] = to_json(*r.counterexample);
            } else {
                if (!*query_ctx) {
                    throw CliError{kExitUsage, json{{"status", "error"},
                                                    {"error", "query needs --context or --universal"}}};
                }
                Assignment ctx = parse_assignment_or_throw(context_str, "context");
                payload["holds"] = evaluate(m, ctx, *f.formula, opts);
            }
        } else if (*explain_suff || *explain_cf) {
            Model m = load_model(model_path);
            Assignment ctx = parse_assignment_or_throw(context_str, "context");
            auto [tname, tvalue] = parse_target(target_str);
            payload["status"] = "ok";
            payload["target"] = tname + "=" + tvalue.str();
            json list = json::array();
            if (*explain_cf) {
                for (const auto& e : good_counterfactual_explanations(m, ctx, tname, tvalue, opts)) {
                    list.push_back(to_json(e));
                }
            } else if (good_only) {
                for (const auto& e : good_sufficient_explanations(m, ctx, tname, tvalue, opts)) {
                    list.push_back(to_json(e));
                }
            } else {
                for (const auto& e : actual_sufficient_explanations(m, ctx, tname, tvalue, opts)) {
                    list.push_back(to_json(e));
                }
            }
            payload["explanations"] = list;
            payload["count"] = list.size();
        } else if (*cause_actual || *cause_optimal || *cause_direct) {
            Model m = load_model(model_path);
            Assignment ctx = parse_assignment_or_throw(context_str, "context");
            Assignment x = parse_assignment_or_throw(x_str, "--x");
            auto [tname, tvalue] = parse_target(target_str);
            CauseResult r;
            if (*cause_actual) {
                Assignment xp = parse_assignment_or_throw(xprime_str, "--xprime");
                r = actual_cause(m, ctx, x, xp, tname, tvalue, opts);
            } else if (*cause_optimal) {
                r = optimal_cause(m, ctx, x, tname, tvalue, opts);
            } else {
                r = direct_cause(m, ctx, x, tname, tvalue, opts);
            }
            payload = to_json(r);
            payload["status"] = r.holds ? "ok" : "refuted";
        } else if (*fairness) {
            Model m = load_model(model_path);
            auto [tname, tvalue] = [&]() -> std::pair<std::string, Rational> {
                // --target here names just the output variable
                if (target_str.find('=') == std::string::npos) {
                    return {target_str, Rational(0)};
                }
                return parse_target(target_str);
            }();
            if (standard_fairness) {
                StandardFairnessResult r =
                    standardly_counterfactually_fair(m, protected_var, tname, opts);
                payload = to_json(r);
                payload["status"] = "ok";
            } else {
                if (paths_file.empty()) {
                    throw CliError{kExitUsage,
                                   json{{"status", "error"},
                                        {"error", "fairness needs --unfair-paths FILE"}}};
                }
                std::vector<Diagnostic> diags;
                auto unfair =
                    parse_path_file(read_file(paths_file), m, protected_var, tname, diags);
                if (!unfair) {
                    throw CliError{kExitParse, json{{"status", "error"},
                                                    {"error", "unfair-path file rejected"},
                                                    {"diagnostics", diagnostics_json(diags)}}};
                }
                FairnessVerdict v = is_fair(m, protected_var, *unfair, tname, opts);
                payload = to_json(v);
                payload["status"] = "ok";
            }
        } else if (*verify) {
            CheckConfig cfg;
            cfg.gen.seed = seed;
            cfg.gen.n_endogenous = max_endo;
            cfg.gen.max_domain = max_domain;
            cfg.trials = trials;
            cfg.opts = opts;
            std::vector<TheoremId> ids;
            if (theorem_str.empty()) {
                ids = {TheoremId::Prop9,  TheoremId::Thm12,  TheoremId::Thm16,
                       TheoremId::Thm17,  TheoremId::Prop19, TheoremId::Thm21,
                       TheoremId::Prop24, TheoremId::Thm25,  TheoremId::Observation1};
            } else {
                auto id = theorem_from_string(theorem_str);
                if (!id) {
                    throw CliError{kExitUsage, json{{"status", "error"},
                                                    {"error", "unknown theorem '" + theorem_str +
                                                                  "'"}}};
                }
                ids.push_back(*id);
            }
            json reports = json::array();
            std::uint64_t total_failures = 0;
            for (TheoremId id : ids) {
                CheckConfig one = cfg;
                if (mode_str.empty()) {
                    one.gen.mode = default_mode_for(id);
                } else if (mode_str == "independence") {
                    one.gen.mode = GeneratorConfig::Mode::Independence;
                } else if (mode_str == "general") {
                    one.gen.mode = GeneratorConfig::Mode::General;
                } else {
                    throw CliError{kExitUsage,
                                   json{{"status", "error"},
                                        {"error", "mode must be general or independence"}}};
                }
                TheoremReport rep = check_theorem(id, one);
                total_failures += rep.failure_count;
                reports.push_back(to_json(rep));
            }
            payload["status"] = "ok";
            payload["reports"] = reports;
            payload["total_failures"] = total_failures;
        }
        emit(payload, json_mode);
        return kExitOk;
    } catch (const CliError& e) {
        emit(e.payload, json_mode);
        return e.code;
    } catch (const BudgetExceeded& e) {
        emit(json{{"status", "error"}, {"error", e.what()}}, json_mode);
        return kExitBudget;
    } catch (const DomainError& e) {
        emit(json{{"status", "error"}, {"error", e.what()}}, json_mode);
        return kExitParse;
    } catch (const std::exception& e) {
        emit(json{{"status", "error"}, {"error", e.what()}}, json_mode);
        return kExitInternal;
    }
}
