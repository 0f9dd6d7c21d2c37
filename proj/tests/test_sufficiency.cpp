#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <thread>

#include "causalex/classifier.hpp"
#include "causalex/detail/subsets.hpp"
#include "causalex/generator.hpp"
#include "causalex/oracle.hpp"
#include "causalex/parser.hpp"
#include "causalex/sufficiency.hpp"
#include "test_util.hpp"

using namespace causalex;
using testutil::ctx;
using testutil::load_fixture;
using testutil::parse_or_fail;

TEST_CASE("weak sufficiency: loan and trivial examples") {
    Model loan = load_fixture("loan.scm");
    CHECK(weakly_sufficient(loan, ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}})).holds);
    CHECK(weakly_sufficient(loan, ctx({{"X2", 45001}}), ctx({{"Y", 1}})).holds);

    Model konst = parse_or_fail("model T\nexo U: {0,1}\nvar X: {0,1} = U\nvar Y: {1} = 1");
    CHECK(weakly_sufficient(konst, {}, ctx({{"Y", 1}})).holds);
}

TEST_CASE("direct sufficiency: loan contrast pair and fire") {
    Model loan = load_fixture("loan.scm");
    CHECK(directly_sufficient(loan, ctx({{"X2", 45001}}), ctx({{"Y", 1}})).holds);

    SuffDecision r =
        directly_sufficient(loan, ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}}));
    CHECK_FALSE(r.holds);
    REQUIRE(r.cex_settings.has_value());
    CHECK(r.cex_settings->at("X2") == Rational(0));  // lexicographically first

    Model fire = load_fixture("fire.scm");
    CHECK(directly_sufficient(fire, ctx({{"F", 1}}), ctx({{"S", 1}, {"B", 0}})).holds);
}

TEST_CASE("counterexamples re-falsify the definition standalone") {
    Model loan = load_fixture("loan.scm");
    SuffDecision r =
        directly_sufficient(loan, ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}}));
    REQUIRE_FALSE(r.holds);
    REQUIRE(r.cex_context.has_value());
    REQUIRE(r.cex_settings.has_value());
    Assignment iv = ctx({{"X1", 50000}, {"X3", 25000}});
    for (const auto& [k, v] : *r.cex_settings) iv[k] = v;
    Assignment s = solve(intervene(loan, iv), *r.cex_context);
    CHECK(s["Y"] != Rational(1));
}

TEST_CASE("strong sufficiency: loan along {X2,Y}, fire along {S,B}") {
    Model loan = load_fixture("loan.scm");
    StrongResult r = strongly_sufficient(loan, ctx({{"X1", 75000}, {"X3", 2500}}),
                                         ctx({{"Y", 0}}), {"X2", "Y"});
    CHECK(r.holds);
    CHECK(r.network_values.at("X2") == Rational(25000));
    CHECK(r.network_values.at("Y") == Rational(0));

    Model fire = load_fixture("fire.scm");
    StrongResult f =
        strongly_sufficient(fire, ctx({{"F", 1}}), ctx({{"B", 0}}), {"S", "B"});
    CHECK(f.holds);
    CHECK(f.network_values.at("S") == Rational(1));
    CHECK(f.network_values.at("B") == Rational(0));
}

TEST_CASE("strong sufficiency along {Y} is exactly direct sufficiency") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n_endogenous = 3;
        GeneratedModel gm = random_model(cfg);
        const Model& m = gm.model;
        CAPTURE(seed);
        const std::string& y = gm.output;
        const Variable& yv = m.var(m.require(y));

        for (VarId xid : m.endo) {
            if (m.var(xid).name == y) continue;
            for (const Rational& xval : m.var(xid).domain.values()) {
                for (const Rational& yval : yv.domain.values()) {
                    Assignment ant{{m.var(xid).name, xval}};
                    Assignment con{{y, yval}};
                    bool strong = strongly_sufficient(m, ant, con, {y}).holds;
                    bool direct = directly_sufficient(m, ant, con).holds;
                    CHECK(strong == direct);
                }
            }
        }
    }
}

TEST_CASE("preconditions are enforced") {
    Model loan = load_fixture("loan.scm");
    CHECK_THROWS_AS(weakly_sufficient(loan, ctx({{"Y", 1}}), ctx({{"Y", 1}})), DomainError);
    CHECK_THROWS_AS(weakly_sufficient(loan, ctx({{"U1", 0}}), ctx({{"Y", 1}})), DomainError);
    CHECK_THROWS_AS(
        strongly_sufficient(loan, ctx({{"X1", 0}}), ctx({{"Y", 1}}), {"X1", "Y"}),
        DomainError);  // network overlaps antecedent
    CHECK_THROWS_AS(strongly_sufficient(loan, ctx({{"X1", 0}}), ctx({{"Y", 1}}), {"X2"}),
                    DomainError);  // consequent outside network
}

TEST_CASE("proposition 9 chain: direct => strong => weak on random models") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n_endogenous = 4;
        cfg.mode = seed % 2 ? GeneratorConfig::Mode::General
                            : GeneratorConfig::Mode::Independence;
        GeneratedModel gm = random_model(cfg);
        const Model& m = gm.model;
        CAPTURE(seed);

        for (const auto& xs : detail::subsets_by_size(m.endo)) {
            for (const auto& ys : detail::subsets_by_size(detail::set_minus(m.endo, xs))) {
                if (ys.empty() || ys.size() > 2 || xs.size() > 2) continue;
                for (detail::TupleIter xi(m, xs); !xi.done(); xi.advance()) {
                    for (detail::TupleIter yi(m, ys); !yi.done(); yi.advance()) {
                        Assignment ant, con;
                        for (std::size_t i = 0; i < xs.size(); ++i) {
                            ant[m.var(xs[i]).name] = m.var(xs[i]).domain.at(xi.current()[i]);
                        }
                        for (std::size_t i = 0; i < ys.size(); ++i) {
                            con[m.var(ys[i]).name] = m.var(ys[i]).domain.at(yi.current()[i]);
                        }
                        bool direct = directly_sufficient(m, ant, con).holds;
                        bool weak = weakly_sufficient(m, ant, con).holds;
                        // strong along some network
                        bool strong = false;
                        std::vector<VarId> rest =
                            detail::set_minus(detail::set_minus(m.endo, xs), ys);
                        for (const auto& extra : detail::subsets_by_size(rest)) {
                            std::vector<std::string> net;
                            for (VarId v : ys) net.push_back(m.var(v).name);
                            for (VarId v : extra) net.push_back(m.var(v).name);
                            if (strongly_sufficient(m, ant, con, net).holds) {
                                strong = true;
                                break;
                            }
                        }
                        if (direct) CHECK(strong);
                        if (strong) CHECK(weak);
                    }
                }
            }
        }
    }
}

TEST_CASE("theorem 12 collapse on independence models; loan is the counterexample") {
    // Under Independence with an agreeing classifier the three notions
    // coincide for single-target consequents.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n_endogenous = 3;
        cfg.mode = GeneratorConfig::Mode::Independence;
        GeneratedModel gm = random_model(cfg);
        const Model& m = gm.model;
        CAPTURE(seed);
        CHECK(independent(m, gm.output));
        CHECK(agrees(m, induced_classifier(m, gm.output)).agrees);

        VarId y = m.require(gm.output);
        for (const auto& xs : detail::subsets_by_size(detail::set_minus(m.endo, {y}))) {
            for (detail::TupleIter xi(m, xs); !xi.done(); xi.advance()) {
                Assignment ant;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    ant[m.var(xs[i]).name] = m.var(xs[i]).domain.at(xi.current()[i]);
                }
                for (const Rational& yval : m.var(y).domain.values()) {
                    Assignment con{{gm.output, yval}};
                    bool weak = weakly_sufficient(m, ant, con).holds;
                    bool direct = directly_sufficient(m, ant, con).holds;
                    CHECK(weak == direct);
                }
            }
        }
    }

    // The general-mode counterexample the collapse rules out: weakly but
    // not directly sufficient in the loan model.
    Model loan = load_fixture("loan.scm");
    Assignment ant = ctx({{"X1", 50000}, {"X3", 25000}});
    CHECK(weakly_sufficient(loan, ant, ctx({{"Y", 1}})).holds);
    CHECK_FALSE(directly_sufficient(loan, ant, ctx({{"Y", 1}})).holds);
}

TEST_CASE("memoization transparency: cached and uncached verdicts agree") {
    Model loan = load_fixture("loan.scm");
    Options no_memo;
    no_memo.memo = false;

    const Assignment queries[][2] = {
        {ctx({{"X2", 45001}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 250000}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 75000}, {"X3", 2500}}), ctx({{"Y", 0}})},
    };
    for (const auto& q : queries) {
        SuffDecision memoized = directly_sufficient(loan, q[0], q[1]);
        SuffDecision repeat = directly_sufficient(loan, q[0], q[1]);  // cache hit path
        SuffDecision fresh = directly_sufficient(loan, q[0], q[1], no_memo);
        CHECK(memoized.holds == fresh.holds);
        CHECK(repeat.holds == fresh.holds);
        CHECK(memoized.cex_settings == fresh.cex_settings);
        CHECK(memoized.cex_context == fresh.cex_context);
    }
}

TEST_CASE("concurrent queries on one shared model are safe and consistent") {
    Model loan = load_fixture("loan.scm");
    const Assignment queries[][2] = {
        {ctx({{"X2", 45001}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 250000}}), ctx({{"Y", 1}})},
        {ctx({{"X1", 75000}, {"X3", 2500}}), ctx({{"Y", 0}})},
    };
    std::array<std::vector<int>, 8> verdicts;
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < verdicts.size(); ++t) {
        workers.emplace_back([&, t] {
            for (int round = 0; round < 20; ++round) {
                for (const auto& q : queries) {
                    verdicts[t].push_back(directly_sufficient(loan, q[0], q[1]).holds ? 1 : 0);
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (std::size_t t = 1; t < verdicts.size(); ++t) CHECK(verdicts[t] == verdicts[0]);
}

TEST_CASE("oracle twins agree with the optimized sufficiency predicates") {
    Model loan = load_fixture("loan.scm");
    Model fire = load_fixture("fire.scm");

    CHECK(oracle::weakly_sufficient(loan, ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}}))
              .holds);
    CHECK(oracle::directly_sufficient(loan, ctx({{"X2", 45001}}), ctx({{"Y", 1}})).holds);
    CHECK_FALSE(
        oracle::directly_sufficient(loan, ctx({{"X1", 50000}, {"X3", 25000}}), ctx({{"Y", 1}}))
            .holds);

    StrongResult a = strongly_sufficient(fire, ctx({{"F", 1}}), ctx({{"B", 0}}), {"S", "B"});
    StrongResult b =
        oracle::strongly_sufficient(fire, ctx({{"F", 1}}), ctx({{"B", 0}}), {"S", "B"});
    CHECK(a.holds == b.holds);
    CHECK(a.network_values == b.network_values);
}
