#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "causalex/model.hpp"
#include "causalex/parser.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(CAUSALEX_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline causalex::Model load_fixture(const std::string& name) {
    causalex::ModelResult r = causalex::parse_model(slurp(fixture_path(name)));
    if (!r.ok()) {
        for (const auto& d : r.diagnostics) MESSAGE(d.render());
    }
    REQUIRE(r.ok());
    return std::move(*r.model);
}

inline causalex::Model parse_or_fail(const std::string& text) {
    causalex::ModelResult r = causalex::parse_model(text);
    if (!r.ok()) {
        for (const auto& d : r.diagnostics) MESSAGE(d.render());
    }
    REQUIRE(r.ok());
    return std::move(*r.model);
}

inline causalex::Assignment ctx(std::initializer_list<std::pair<std::string, long long>> kv) {
    causalex::Assignment a;
    for (const auto& [k, v] : kv) a[k] = causalex::Rational(v);
    return a;
}

}  // namespace testutil
