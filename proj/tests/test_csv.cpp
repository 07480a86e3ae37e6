#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "edmnet/csv.hpp"

using namespace edmnet;

TEST_CASE("split on commas, keeping empty fields") {
    CHECK(csv::split("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(csv::split("a") == std::vector<std::string>{"a"});
    CHECK(csv::split("") == std::vector<std::string>{""});
    CHECK(csv::split("a,,c") == std::vector<std::string>{"a", "", "c"});
    CHECK(csv::split(",") == std::vector<std::string>{"", ""});
    CHECK(csv::split("a,b,") == std::vector<std::string>{"a", "b", ""});
}

TEST_CASE("split strips a trailing carriage return") {
    CHECK(csv::split("a,b\r") == std::vector<std::string>{"a", "b"});
    CHECK(csv::split("\r") == std::vector<std::string>{""});
    // Only the final CR is line-ending noise; interior ones are data.
    CHECK(csv::split("a\r,b") == std::vector<std::string>{"a\r", "b"});
}

TEST_CASE("trim removes surrounding whitespace only") {
    CHECK(csv::trim("  x  ") == "x");
    CHECK(csv::trim("\tx\r") == "x");
    CHECK(csv::trim("a b") == "a b");
    CHECK(csv::trim("   ") == "");
    CHECK(csv::trim("") == "");
}

TEST_CASE("parse_double accepts ordinary and scientific forms") {
    double v = 0.0;
    REQUIRE(csv::parse_double("1.5", v));
    CHECK(v == 1.5);
    REQUIRE(csv::parse_double("-2e-3", v));
    CHECK(v == -2e-3);
    REQUIRE(csv::parse_double(" 42 ", v));
    CHECK(v == 42.0);
    REQUIRE(csv::parse_double("0.30000000000000004", v));
    CHECK(v == 0.30000000000000004);
}

TEST_CASE("parse_double rejects junk, partial parses, and non-finite values") {
    double v = 0.0;
    CHECK_FALSE(csv::parse_double("", v));
    CHECK_FALSE(csv::parse_double("abc", v));
    CHECK_FALSE(csv::parse_double("1.5x", v));
    CHECK_FALSE(csv::parse_double("1.5 2", v));
    CHECK_FALSE(csv::parse_double("nan", v));
    CHECK_FALSE(csv::parse_double("inf", v));
    CHECK_FALSE(csv::parse_double("1e999", v));
}

TEST_CASE("parse_int is strict about trailing characters") {
    long v = 0;
    REQUIRE(csv::parse_int("17", v));
    CHECK(v == 17);
    REQUIRE(csv::parse_int("-3", v));
    CHECK(v == -3);
    CHECK_FALSE(csv::parse_int("", v));
    CHECK_FALSE(csv::parse_int("1.5", v));
    CHECK_FALSE(csv::parse_int("7a", v));
}

TEST_CASE("is_iso_date validates structure, month lengths, leap years") {
    CHECK(csv::is_iso_date("2021-01-04"));
    CHECK(csv::is_iso_date("2020-02-29"));   // leap year
    CHECK(csv::is_iso_date("2000-02-29"));   // 400-rule leap year
    CHECK_FALSE(csv::is_iso_date("2021-02-29"));
    CHECK_FALSE(csv::is_iso_date("1900-02-29"));  // 100-rule non-leap
    CHECK_FALSE(csv::is_iso_date("2021-13-01"));
    CHECK_FALSE(csv::is_iso_date("2021-00-10"));
    CHECK_FALSE(csv::is_iso_date("2021-04-31"));
    CHECK_FALSE(csv::is_iso_date("2021-04-00"));
    CHECK_FALSE(csv::is_iso_date("2021-1-04"));
    CHECK_FALSE(csv::is_iso_date("21-01-04"));
    CHECK_FALSE(csv::is_iso_date("2021/01/04"));
    CHECK_FALSE(csv::is_iso_date("2021-01-0 "));
    CHECK_FALSE(csv::is_iso_date(""));
}
