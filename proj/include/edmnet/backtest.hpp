#pragma once

#include <span>
#include <string>
#include <vector>

#include "edmnet/allocate.hpp"
#include "edmnet/market_data.hpp"
#include "edmnet/risk.hpp"

namespace edmnet {

// Consecutive chunk of trading dates (rows of a return matrix).
struct Window {
    std::size_t first_row = 0;
    std::size_t n_rows = 0;
    std::string start_date;
    std::string end_date;
    bool partial = false;  // true when shorter than the configured length
};

// Per-window series for one portfolio or the market index.
struct WindowSeries {
    std::string name;
    std::vector<double> returns;  // sum of daily weighted log-returns
    std::vector<double> risks;    // risk of the within-window daily series
};

struct BacktestReport {
    std::vector<Window> windows;
    std::vector<WindowSeries> series;  // portfolios in input order, market last
    RiskMeasure measure = RiskMeasure::var;
    double confidence = 0.95;
};

// Splits `dates` into ceil(|dates| / window_days) consecutive windows;
// a short final window is kept and flagged partial.
std::vector<Window> split_windows(const std::vector<std::string>& dates, int window_days);

// Evaluates a fixed-weight portfolio over each window. The portfolio's
// tickers must all be present in the return matrix.
WindowSeries evaluate(const Portfolio& portfolio, const ReturnMatrix& returns,
                      const std::vector<Window>& windows, RiskMeasure measure,
                      double confidence);

// Evaluates every named portfolio plus the market index. `market` must
// hold one return per row of `returns` (already date-aligned).
BacktestReport compare(const std::vector<std::pair<std::string, Portfolio>>& portfolios,
                       std::span<const double> market, const ReturnMatrix& returns,
                       const std::vector<Window>& windows, RiskMeasure measure,
                       double confidence);

// Picks the market return for each return date from a date-keyed series;
// throws ValidationError naming the first date that is missing.
std::vector<double> align_market(const std::map<std::string, double>& by_date,
                                 const std::vector<std::string>& dates);

}  // namespace edmnet
