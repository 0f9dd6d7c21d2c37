#include "causalex/json_io.hpp"

namespace causalex {

json to_json(const Assignment& a) {
    json out = json::object();
    for (const auto& [name, value] : a) out[name] = value.str();
    return out;
}

json to_json(const SuffDecision& d) {
    json out;
    out["holds"] = d.holds;
    if (d.cex_context) out["counterexample_context"] = to_json(*d.cex_context);
    if (d.cex_settings) out["counterexample_settings"] = to_json(*d.cex_settings);
    return out;
}

json to_json(const StrongResult& r) {
    json out;
    out["holds"] = r.holds;
    if (!r.network_values.empty()) out["network_values"] = to_json(r.network_values);
    if (r.cex_context) out["counterexample_context"] = to_json(*r.cex_context);
    if (r.cex_settings) out["counterexample_settings"] = to_json(*r.cex_settings);
    return out;
}

namespace {

// The conventional display elides the target from the network.
json network_display(const std::vector<std::string>& network, const std::string& target) {
    json arr = json::array();
    for (const auto& n : network) {
        if (n != target) arr.push_back(n);
    }
    return arr;
}

}  // namespace

json to_json(const SufficientExplanation& e) {
    json out;
    out["antecedent"] = to_json(e.antecedent);
    out["network"] = e.network;
    out["network_display"] = network_display(e.network, e.target);
    out["target"] = e.target;
    out["target_value"] = e.target_value.str();
    out["network_values"] = to_json(e.network_values);
    out["actual"] = e.actual;
    out["direct"] = e.direct;
    return out;
}

json to_json(const CounterfactualExplanation& e) {
    json out;
    out["antecedent"] = to_json(e.antecedent);
    out["contrast"] = to_json(e.contrast);
    out["witness"] = to_json(e.witness);
    out["network"] = e.network;
    out["network_display"] = network_display(e.network, e.target);
    out["target"] = e.target;
    out["value"] = e.value.str();
    out["counterfactual_value"] = e.counterfactual_value.str();
    return out;
}

json to_json(const DependenceResult& r) {
    json out;
    out["holds"] = r.holds;
    json ws = json::array();
    for (const auto& w : r.witnesses) {
        json one;
        one["vars"] = w.vars;
        one["values"] = to_json(w.values);
        ws.push_back(one);
    }
    out["witnesses"] = ws;
    if (!r.refutation.empty()) out["refutation"] = r.refutation;
    return out;
}

json to_json(const ReplaceResult& r) {
    json out;
    out["can_replace"] = r.can;
    if (r.can) out["certificate_network"] = r.certificate;
    return out;
}

json to_json(const CauseStatement& s) {
    json out;
    out["cause"] = to_json(s.cause);
    if (s.contrast) out["contrast"] = to_json(*s.contrast);
    out["target"] = s.target;
    out["target_value"] = s.target_value.str();
    out["evidence"] = to_json(s.evidence);
    out["witness"] = to_json(s.witness);
    return out;
}

json to_json(const CauseResult& r) {
    json out;
    out["holds"] = r.holds;
    if (r.statement) out["statement"] = to_json(*r.statement);
    if (!r.all.empty()) {
        json all = json::array();
        for (const auto& s : r.all) all.push_back(to_json(s));
        out["all_evidence"] = all;
    }
    if (!r.refutation.empty()) out["refutation"] = r.refutation;
    return out;
}

json to_json(const PathSet& p) {
    json arr = json::array();
    for (const auto& path : p.paths) arr.push_back(path);
    return arr;
}

json to_json(const FairnessVerdict& v) {
    json out;
    out["fair"] = v.fair;
    if (v.certificate) {
        json c;
        c["context"] = to_json(v.certificate->context);
        c["a"] = v.certificate->protected_actual.str();
        c["a_prime"] = v.certificate->protected_contrast.str();
        c["y"] = v.certificate->output_value.str();
        c["cause"] = to_json(v.certificate->cause);
        c["network_paths"] = to_json(v.certificate->network_path_set);
        out["certificate"] = c;
    }
    return out;
}

json to_json(const StandardFairnessResult& r) {
    json out;
    out["fair"] = r.fair;
    if (r.certificate_context) out["context"] = to_json(*r.certificate_context);
    if (r.certificate_contrast) out["a_prime"] = r.certificate_contrast->str();
    if (r.output_before) out["y_before"] = r.output_before->str();
    if (r.output_after) out["y_after"] = r.output_after->str();
    return out;
}

json to_json(const TheoremReport& r) {
    json out;
    out["theorem"] = r.theorem;
    out["seed"] = r.seed;
    out["trials"] = r.trials;
    out["rng"] = r.rng;
    out["failure_count"] = r.failure_count;
    out["budget_exceeded_trials"] = r.budget_exceeded_trials;
    json fails = json::array();
    for (const auto& f : r.failures) {
        json one;
        one["trial"] = f.trial;
        one["model_dsl"] = f.model_dsl;
        one["context"] = f.context;
        one["detail"] = f.detail;
        fails.push_back(one);
    }
    out["failures"] = fails;
    return out;
}

json to_json(const UniversalResult& r) {
    json out;
    out["holds"] = r.holds;
    if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
    return out;
}

}  // namespace causalex
