#include "edmnet/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>

#include "edmnet/csv.hpp"
#include "edmnet/errors.hpp"

namespace edmnet {

std::size_t ReturnMatrix::ticker_index(const std::string& ticker) const {
    auto it = std::lower_bound(tickers.begin(), tickers.end(), ticker);
    if (it == tickers.end() || *it != ticker)
        throw ValidationError("unknown ticker: " + ticker);
    return static_cast<std::size_t>(it - tickers.begin());
}

std::vector<double> ReturnMatrix::column(std::size_t j) const {
    std::vector<double> col(returns.size());
    for (std::size_t t = 0; t < returns.size(); ++t) col[t] = returns[t][j];
    return col;
}

const std::string& SectorTable::sector(const std::string& ticker) const {
    auto it = sector_of.find(ticker);
    if (it == sector_of.end())
        throw ValidationError("no sector for ticker: " + ticker);
    return it->second;
}

namespace {

void expect_header(std::istream& in, const std::string& expected, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty input, expected header `" + expected + "`");
    ++line_no;
    const auto fields = csv::split(line);
    const auto expected_fields = csv::split(expected);
    bool ok = fields.size() == expected_fields.size();
    for (std::size_t i = 0; ok && i < fields.size(); ++i)
        ok = csv::trim(fields[i]) == expected_fields[i];
    if (!ok)
        throw ParseError("expected header `" + expected + "`, got `" + line + "`", line_no);
}

}  // namespace

PriceRecords read_price_records(std::istream& in) {
    std::size_t line_no = 0;
    expect_header(in, "date,ticker,adjusted_close", line_no);

    PriceRecords records;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != 3)
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        const std::string date = csv::trim(fields[0]);
        const std::string ticker = csv::trim(fields[1]);
        if (!csv::is_iso_date(date))
            throw ParseError("invalid ISO-8601 date `" + date + "`", line_no);
        if (ticker.empty())
            throw ParseError("empty ticker", line_no);
        double price = 0.0;
        if (!csv::parse_double(fields[2], price))
            throw ParseError("invalid price `" + fields[2] + "`", line_no);
        if (price <= 0.0)
            throw ValidationError("non-positive price " + fields[2] + " for " + ticker +
                                  " on " + date);
        auto [it, inserted] = records[ticker].emplace(date, price);
        (void)it;
        if (!inserted)
            throw ValidationError("duplicate price cell for " + ticker + " on " + date);
    }
    if (records.empty()) throw ValidationError("price file contains no data rows");
    return records;
}

PriceTable align(const PriceRecords& records) {
    for (const auto& [ticker, by_date] : records)
        if (by_date.size() < 2)
            throw ValidationError("ticker " + ticker + " has fewer than 2 dates");

    // Intersection of every ticker's date set.
    std::set<std::string> common;
    bool first = true;
    for (const auto& [ticker, by_date] : records) {
        if (first) {
            for (const auto& [date, price] : by_date) common.insert(date);
            first = false;
        } else {
            for (auto it = common.begin(); it != common.end();) {
                if (by_date.count(*it) == 0)
                    it = common.erase(it);
                else
                    ++it;
            }
        }
    }
    if (common.size() < 2) {
        // Every ticker ends up short; name the first one.
        throw ValidationError("ticker " + records.begin()->first +
                              " has fewer than 2 surviving dates after alignment");
    }

    PriceTable table;
    table.tickers.reserve(records.size());
    for (const auto& [ticker, by_date] : records) table.tickers.push_back(ticker);
    table.dates.assign(common.begin(), common.end());
    table.prices.assign(table.dates.size(),
                        std::vector<double>(table.tickers.size(), 0.0));
    for (std::size_t j = 0; j < table.tickers.size(); ++j) {
        const auto& by_date = records.at(table.tickers[j]);
        for (std::size_t t = 0; t < table.dates.size(); ++t)
            table.prices[t][j] = by_date.at(table.dates[t]);
    }
    return table;
}

PriceRecords to_records(const PriceTable& table) {
    PriceRecords records;
    for (std::size_t j = 0; j < table.n_tickers(); ++j)
        for (std::size_t t = 0; t < table.n_dates(); ++t)
            records[table.tickers[j]][table.dates[t]] = table.prices[t][j];
    return records;
}

PriceTable load_prices(std::istream& in) { return align(read_price_records(in)); }

ReturnMatrix log_returns(const PriceTable& p) {
    if (p.n_dates() < 2) throw ValidationError("need at least 2 dates for returns");
    ReturnMatrix r;
    r.tickers = p.tickers;
    r.dates.assign(p.dates.begin() + 1, p.dates.end());
    r.returns.assign(r.dates.size(), std::vector<double>(p.n_tickers(), 0.0));
    for (std::size_t t = 1; t < p.n_dates(); ++t)
        for (std::size_t j = 0; j < p.n_tickers(); ++j)
            r.returns[t - 1][j] = std::log(p.prices[t][j]) - std::log(p.prices[t - 1][j]);
    return r;
}

SectorTable load_sectors(std::istream& in, const std::vector<std::string>& universe) {
    std::size_t line_no = 0;
    expect_header(in, "ticker,sector", line_no);

    SectorTable table;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != 2)
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        const std::string ticker = csv::trim(fields[0]);
        const std::string sector = csv::trim(fields[1]);
        if (ticker.empty() || sector.empty())
            throw ParseError("empty ticker or sector", line_no);
        auto it = table.sector_of.find(ticker);
        if (it != table.sector_of.end() && it->second != sector)
            throw ValidationError("conflicting sectors for ticker " + ticker + ": " +
                                  it->second + " vs " + sector);
        table.sector_of[ticker] = sector;
    }
    for (const auto& ticker : universe)
        if (table.sector_of.count(ticker) == 0)
            throw ValidationError("sector file missing ticker: " + ticker);
    return table;
}

std::vector<std::pair<std::string, double>> load_index_closes(std::istream& in) {
    std::size_t line_no = 0;
    expect_header(in, "date,adjusted_close", line_no);

    std::map<std::string, double> by_date;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != 2)
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        const std::string date = csv::trim(fields[0]);
        if (!csv::is_iso_date(date))
            throw ParseError("invalid ISO-8601 date `" + date + "`", line_no);
        double close = 0.0;
        if (!csv::parse_double(fields[1], close))
            throw ParseError("invalid close `" + fields[1] + "`", line_no);
        if (close <= 0.0)
            throw ValidationError("non-positive index close on " + date);
        if (!by_date.emplace(date, close).second)
            throw ValidationError("duplicate index date " + date);
    }
    if (by_date.size() < 2)
        throw ValidationError("index series needs at least 2 dates");
    return {by_date.begin(), by_date.end()};
}

std::map<std::string, double> index_log_returns(
    const std::vector<std::pair<std::string, double>>& closes) {
    std::map<std::string, double> out;
    for (std::size_t t = 1; t < closes.size(); ++t)
        out[closes[t].first] = std::log(closes[t].second) - std::log(closes[t - 1].second);
    return out;
}

}  // namespace edmnet
