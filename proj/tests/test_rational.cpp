#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "causalex/rational.hpp"

using causalex::Rational;
using causalex::RationalError;

TEST_CASE("construction normalizes to canonical form") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(3, 2).num() == 3);
    CHECK(Rational(3, 2).den() == 2);
    CHECK_THROWS_AS(Rational(1, 0), RationalError);
}

TEST_CASE("arithmetic is exact") {
    Rational a(3, 10);
    CHECK(a * Rational(75000) == Rational(22500));
    CHECK(a * Rational(75000) + Rational(2500) == Rational(25000));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) - Rational(1, 3) == Rational(0));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(-Rational(5, 7) == Rational(-5, 7));
    CHECK_THROWS_AS(Rational(1) / Rational(0), RationalError);
}

TEST_CASE("ordering is the rational order") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(225000) <= Rational(225000));
    CHECK(Rational(85000) + Rational(5) * Rational(28000) >= Rational(225000));
}

TEST_CASE("parse accepts integers, fractions and exact decimals") {
    CHECK(Rational::parse("45001") == Rational(45001));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("3/10") == Rational(3, 10));
    CHECK(Rational::parse("-3/10") == Rational(-3, 10));
    CHECK(Rational::parse("0.3") == Rational(3, 10));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse(""), RationalError);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), RationalError);
    CHECK_THROWS_AS(Rational::parse("1/"), RationalError);
    CHECK_THROWS_AS(Rational::parse("abc"), RationalError);
    CHECK_THROWS_AS(Rational::parse("1/0"), RationalError);
}

TEST_CASE("str round-trips through parse") {
    for (const auto& r : {Rational(0), Rational(-7), Rational(1, 3), Rational(-22, 7)}) {
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational(1, 3).str() == "1/3");
    CHECK(Rational(4).str() == "4");
}

TEST_CASE("overflow is an error, not a wraparound") {
    Rational big(INT64_MAX / 2);
    CHECK_THROWS_AS(big * big, RationalError);
    CHECK_THROWS_AS(big + big + big, RationalError);
}
