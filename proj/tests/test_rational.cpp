#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whispers/rational.hpp"

#include <cstdint>
#include <stdexcept>

using whispers::Rational;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, 6) == Rational(-1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).num() == 2);
    CHECK(Rational(6, 3).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(1, 3) == Rational(-1, 3));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);

    // sum of the six per-offset weights used throughout: 6 * 1/6 == 1
    Rational s(0);
    for (int i = 0; i < 6; ++i) s += Rational(1, 6);
    CHECK(s == Rational(1));
}

TEST_CASE("ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(2, 9) < Rational(1, 4));
    CHECK(Rational(7, 8) <= Rational(7, 8));
    CHECK(Rational(5, 3) > Rational(3, 2));
}

TEST_CASE("string rendering is p/q or a bare integer") {
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(2, 9).str() == "2/9");
}

TEST_CASE("to_double") {
    CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(Rational(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("overflow past 64 bits is detected, not wrapped") {
    const std::int64_t big = INT64_MAX;
    CHECK_THROWS_AS(Rational(big, 1) + Rational(big, 1), std::overflow_error);
    CHECK_THROWS_AS(Rational(big, 1) * Rational(big, 1), std::overflow_error);
    // intermediates wider than 64 bits are fine when the result reduces
    CHECK(Rational(big, 2) * Rational(2, big) == Rational(1));
}
