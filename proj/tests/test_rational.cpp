#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "osw/rational.hpp"

using namespace osw;

TEST_CASE("integer and fraction parsing") {
    CHECK(parse_rat("3") == Rat(3));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("1/2") == rat(1, 2));
    CHECK(parse_rat("7/4") == rat(7, 4));
    CHECK(parse_rat("-3/6") == rat(-1, 2));
    CHECK(parse_rat("0") == Rat(0));
}

TEST_CASE("decimal parsing is exact") {
    CHECK(parse_rat("0.5") == rat(1, 2));
    CHECK(parse_rat("-0.25") == rat(-1, 4));
    CHECK(parse_rat("1.75") == rat(7, 4));
    CHECK(parse_rat("0.125") == rat(1, 8));
    CHECK(parse_rat("2.0") == Rat(2));
}

TEST_CASE("serialization uses canonical p/q") {
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK(rat_str(rat(2, 4)) == "1/2");
    CHECK(rat_str(Rat(5)) == "5");
    CHECK(rat_str(rat(-3, 6)) == "-1/2");
    CHECK(rat_str(Rat(0)) == "0");
}

TEST_CASE("round trip through text") {
    for (const char* s : {"0", "1", "-1", "1/2", "22/7", "-9/8"}) {
        CHECK(rat_str(parse_rat(s)) == s);
    }
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS(parse_rat(""));
    CHECK_THROWS(parse_rat("abc"));
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("1.2.3"));
    CHECK_THROWS(rat(1, 0));
}

TEST_CASE("helper canonicalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, -4) == rat(1, 2));
    CHECK(rat_double(rat(1, 2)) == doctest::Approx(0.5));
}
