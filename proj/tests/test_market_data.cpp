#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "edmnet/errors.hpp"
#include "edmnet/market_data.hpp"
#include "support.hpp"

using namespace edmnet;

namespace {

PriceTable table_from(const std::string& csv) {
    std::istringstream in(csv);
    return load_prices(in);
}

}  // namespace

TEST_CASE("price ingestion aligns tickers and sorts dates") {
    // Rows deliberately shuffled; ZZ listed before AA.
    std::istringstream in(
        "date,ticker,adjusted_close\n"
        "2021-01-05,ZZ,50\n"
        "2021-01-04,AA,100\n"
        "2021-01-05,AA,110\n"
        "2021-01-04,ZZ,49\n"
        "2021-01-06,AA,99\n"
        "2021-01-06,ZZ,51\n");
    const PriceTable t = load_prices(in);
    CHECK(t.tickers == std::vector<std::string>{"AA", "ZZ"});
    CHECK(t.dates == std::vector<std::string>{"2021-01-04", "2021-01-05", "2021-01-06"});
    REQUIRE(t.n_dates() == 3);
    CHECK(t.prices[0][0] == 100.0);
    CHECK(t.prices[1][0] == 110.0);
    CHECK(t.prices[2][1] == 51.0);
}

TEST_CASE("alignment keeps only dates common to all tickers") {
    std::istringstream in(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,100\n"
        "2021-01-05,AA,110\n"
        "2021-01-06,AA,99\n"
        "2021-01-04,BB,10\n"
        "2021-01-06,BB,12\n");  // BB missing 01-05
    const PriceTable t = load_prices(in);
    CHECK(t.dates == std::vector<std::string>{"2021-01-04", "2021-01-06"});
    CHECK(t.prices[1][0] == 99.0);
    CHECK(t.prices[1][1] == 12.0);
}

TEST_CASE("log returns: worked example 100 -> 110 -> 99") {
    const PriceTable t = table_from(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,100\n"
        "2021-01-05,AA,110\n"
        "2021-01-06,AA,99\n");
    const ReturnMatrix r = log_returns(t);
    REQUIRE(r.n_dates() == 2);
    CHECK(r.dates == std::vector<std::string>{"2021-01-05", "2021-01-06"});
    CHECK(r.returns[0][0] == doctest::Approx(0.095310).epsilon(1e-4));
    CHECK(r.returns[1][0] == doctest::Approx(-0.105361).epsilon(1e-4));
    // Pin the exact formula, not just the rounded value.
    CHECK(r.returns[0][0] == std::log(110.0) - std::log(100.0));
    CHECK(r.returns[1][0] == std::log(99.0) - std::log(110.0));
}

TEST_CASE("log returns drop the first date and keep ticker order") {
    const PriceTable t = table_from(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,100\n"
        "2021-01-05,AA,101\n"
        "2021-01-04,BB,20\n"
        "2021-01-05,BB,19\n");
    const ReturnMatrix r = log_returns(t);
    CHECK(r.tickers == t.tickers);
    REQUIRE(r.n_dates() == 1);
    CHECK(r.returns[0][0] > 0.0);
    CHECK(r.returns[0][1] < 0.0);
}

TEST_CASE("price parser rejects malformed input with the line number") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_price_records(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("date,close\n"), ParseError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n2021-01-04,AA\n"), ParseError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n04/01/2021,AA,1\n"), ParseError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n2021-01-04,,1\n"), ParseError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n2021-01-04,AA,abc\n"), ParseError);

    try {
        parse("date,ticker,adjusted_close\n2021-01-04,AA,1\n2021-01-05,AA\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("price validation: positivity, duplicates, emptiness") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_price_records(in);
    };
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n2021-01-04,AA,0\n"), ValidationError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n2021-01-04,AA,-5\n"), ValidationError);
    CHECK_THROWS_AS(parse("date,ticker,adjusted_close\n"), ValidationError);
    CHECK_THROWS_AS(
        parse("date,ticker,adjusted_close\n2021-01-04,AA,1\n2021-01-04,AA,2\n"),
        ValidationError);
}

TEST_CASE("alignment failures name a ticker") {
    // Single date for BB.
    std::istringstream one_date(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,1\n"
        "2021-01-05,AA,2\n"
        "2021-01-04,BB,3\n");
    CHECK_THROWS_WITH_AS(load_prices(one_date), doctest::Contains("BB"), ValidationError);

    // Disjoint date sets: intersection empty.
    std::istringstream disjoint(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,1\n"
        "2021-01-05,AA,2\n"
        "2021-01-06,BB,3\n"
        "2021-01-07,BB,4\n");
    CHECK_THROWS_AS(load_prices(disjoint), ValidationError);
}

TEST_CASE("to_records inverts alignment") {
    const PriceTable t = table_from(
        "date,ticker,adjusted_close\n"
        "2021-01-04,AA,100\n"
        "2021-01-05,AA,110\n"
        "2021-01-04,BB,20\n"
        "2021-01-05,BB,21\n");
    const PriceTable back = align(to_records(t));
    CHECK(back.tickers == t.tickers);
    CHECK(back.dates == t.dates);
    CHECK(back.prices == t.prices);
}

TEST_CASE("ticker_index finds sorted columns and rejects unknown names") {
    const ReturnMatrix r = testsupport::make_returns({"AA", "BB", "CC"},
                                                     {{0.1}, {0.2}, {0.3}});
    CHECK(r.ticker_index("AA") == 0);
    CHECK(r.ticker_index("CC") == 2);
    CHECK_THROWS_WITH_AS(r.ticker_index("DD"), doctest::Contains("DD"), ValidationError);
    CHECK(r.column(1) == std::vector<double>{0.2});
}

TEST_CASE("sector table parses, deduplicates, and checks coverage") {
    const std::vector<std::string> universe{"AA", "BB"};
    {
        std::istringstream in("ticker,sector\nAA,tech\nBB,energy\nAA,tech\n");
        const SectorTable s = load_sectors(in, universe);
        CHECK(s.sector("AA") == "tech");
        CHECK(s.sector("BB") == "energy");
        CHECK_THROWS_WITH_AS(s.sector("CC"), doctest::Contains("CC"), ValidationError);
    }
    {
        std::istringstream in("ticker,sector\nAA,tech\nAA,energy\nBB,x\n");
        CHECK_THROWS_AS(load_sectors(in, universe), ValidationError);
    }
    {
        std::istringstream in("ticker,sector\nAA,tech\n");
        CHECK_THROWS_WITH_AS(load_sectors(in, universe), doctest::Contains("BB"),
                             ValidationError);
    }
    {
        std::istringstream in("bad header\n");
        CHECK_THROWS_AS(load_sectors(in, universe), ParseError);
    }
}

TEST_CASE("index closes: sorted output, strict validation") {
    {
        std::istringstream in(
            "date,adjusted_close\n"
            "2021-01-06,101\n"
            "2021-01-04,100\n"
            "2021-01-05,99\n");
        const auto closes = load_index_closes(in);
        REQUIRE(closes.size() == 3);
        CHECK(closes[0].first == "2021-01-04");
        CHECK(closes[2].first == "2021-01-06");
        CHECK(closes[2].second == 101.0);

        const auto rets = index_log_returns(closes);
        REQUIRE(rets.size() == 2);
        CHECK(rets.count("2021-01-04") == 0);  // keyed by the later date
        CHECK(rets.at("2021-01-05") == std::log(99.0) - std::log(100.0));
        CHECK(rets.at("2021-01-06") == std::log(101.0) - std::log(99.0));
    }
    {
        std::istringstream in("date,adjusted_close\n2021-01-04,1\n2021-01-04,2\n");
        CHECK_THROWS_AS(load_index_closes(in), ValidationError);
    }
    {
        std::istringstream in("date,adjusted_close\n2021-01-04,-1\n2021-01-05,1\n");
        CHECK_THROWS_AS(load_index_closes(in), ValidationError);
    }
    {
        std::istringstream in("date,adjusted_close\n2021-01-04,1\n");
        CHECK_THROWS_AS(load_index_closes(in), ValidationError);
    }
    {
        std::istringstream in("date,adjusted_close\n2021-01-04,x\n");
        CHECK_THROWS_AS(load_index_closes(in), ParseError);
    }
}

TEST_CASE("log_returns requires two dates") {
    PriceTable t;
    t.tickers = {"AA"};
    t.dates = {"2021-01-04"};
    t.prices = {{100.0}};
    CHECK_THROWS_AS(log_returns(t), ValidationError);
}
