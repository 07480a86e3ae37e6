#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace edmnet {

// Aligned panel of adjusted closing prices: one row per trading date,
// one column per ticker. Tickers sorted lexicographically, dates
// ascending (ISO-8601), every cell populated and strictly positive.
struct PriceTable {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    std::vector<std::vector<double>> prices;  // [date][ticker]

    std::size_t n_dates() const { return dates.size(); }
    std::size_t n_tickers() const { return tickers.size(); }
};

// Daily log-returns; one row fewer than the price table it came from.
// The return on date d is relative to the preceding trading date.
struct ReturnMatrix {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    std::vector<std::vector<double>> returns;  // [date][ticker]

    std::size_t n_dates() const { return dates.size(); }
    std::size_t n_tickers() const { return tickers.size(); }

    // Index of `ticker` in the sorted ticker list; throws ValidationError
    // if the ticker is unknown.
    std::size_t ticker_index(const std::string& ticker) const;

    std::vector<double> column(std::size_t j) const;
};

struct SectorTable {
    std::map<std::string, std::string> sector_of;

    const std::string& sector(const std::string& ticker) const;
};

// Unaligned ingestion form: ticker -> (date -> price).
using PriceRecords = std::map<std::string, std::map<std::string, double>>;

// Parses a `date,ticker,adjusted_close` CSV. Throws ParseError with the
// offending line number for malformed rows, ValidationError for
// non-positive prices or duplicate (date,ticker) cells.
PriceRecords read_price_records(std::istream& in);

// Restricts every ticker to the dates all tickers share, dropping the
// rest. Throws ValidationError if any ticker ends up with fewer than two
// dates (named in the message).
PriceTable align(const PriceRecords& records);

PriceRecords to_records(const PriceTable& table);

// read_price_records + align.
PriceTable load_prices(std::istream& in);

ReturnMatrix log_returns(const PriceTable& p);

// Parses `ticker,sector` and checks it covers `universe`. Duplicate rows
// with conflicting sectors are an error.
SectorTable load_sectors(std::istream& in, const std::vector<std::string>& universe);

// Single-series `date,adjusted_close` CSV (a market index level).
// Returns rows sorted by date; duplicate dates are an error.
std::vector<std::pair<std::string, double>> load_index_closes(std::istream& in);

// Log-return of each consecutive close, keyed by the later date.
std::map<std::string, double> index_log_returns(
    const std::vector<std::pair<std::string, double>>& closes);

}  // namespace edmnet
