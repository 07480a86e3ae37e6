#include "edmnet/backtest.hpp"

#include <stdexcept>

#include "edmnet/errors.hpp"

namespace edmnet {

std::vector<Window> split_windows(const std::vector<std::string>& dates, int window_days) {
    if (dates.empty()) throw ValidationError("split_windows: empty date list");
    if (window_days < 1) throw ValidationError("split_windows: window_days must be >= 1");

    std::vector<Window> windows;
    const auto step = static_cast<std::size_t>(window_days);
    for (std::size_t first = 0; first < dates.size(); first += step) {
        Window w;
        w.first_row = first;
        w.n_rows = std::min(step, dates.size() - first);
        w.start_date = dates[first];
        w.end_date = dates[first + w.n_rows - 1];
        w.partial = w.n_rows < step;
        windows.push_back(std::move(w));
    }
    return windows;
}

namespace {

WindowSeries series_from_daily(std::string name, std::span<const double> daily,
                               const std::vector<Window>& windows, RiskMeasure measure,
                               double confidence) {
    WindowSeries out;
    out.name = std::move(name);
    out.returns.reserve(windows.size());
    out.risks.reserve(windows.size());
    for (const auto& w : windows) {
        if (w.first_row + w.n_rows > daily.size())
            throw ValidationError("backtest: window " + w.start_date + ".." + w.end_date +
                                  " lies outside the available dates");
        const auto slice = daily.subspan(w.first_row, w.n_rows);
        double total = 0.0;
        for (double r : slice) total += r;
        out.returns.push_back(total);
        out.risks.push_back(risk_of(slice, measure, confidence));
    }
    return out;
}

std::vector<double> daily_weighted(const Portfolio& portfolio, const ReturnMatrix& returns) {
    std::vector<std::size_t> cols;
    cols.reserve(portfolio.tickers.size());
    for (const auto& t : portfolio.tickers) cols.push_back(returns.ticker_index(t));

    std::vector<double> daily;
    daily.reserve(returns.returns.size());
    for (const auto& row : returns.returns) {
        double value = 0.0;
        for (std::size_t i = 0; i < cols.size(); ++i)
            value += portfolio.weights[i] * row[cols[i]];
        daily.push_back(value);
    }
    return daily;
}

}  // namespace

WindowSeries evaluate(const Portfolio& portfolio, const ReturnMatrix& returns,
                      const std::vector<Window>& windows, RiskMeasure measure,
                      double confidence) {
    const auto daily = daily_weighted(portfolio, returns);
    return series_from_daily("portfolio", daily, windows, measure, confidence);
}

BacktestReport compare(const std::vector<std::pair<std::string, Portfolio>>& portfolios,
                       std::span<const double> market, const ReturnMatrix& returns,
                       const std::vector<Window>& windows, RiskMeasure measure,
                       double confidence) {
    if (market.size() != returns.returns.size())
        throw ValidationError("backtest: market series has " + std::to_string(market.size()) +
                              " returns but the panel has " +
                              std::to_string(returns.returns.size()) + " dates");

    BacktestReport report;
    report.windows = windows;
    report.measure = measure;
    report.confidence = confidence;
    for (const auto& [name, portfolio] : portfolios) {
        const auto daily = daily_weighted(portfolio, returns);
        report.series.push_back(series_from_daily(name, daily, windows, measure, confidence));
    }
    report.series.push_back(series_from_daily("market", market, windows, measure, confidence));
    return report;
}

std::vector<double> align_market(const std::map<std::string, double>& by_date,
                                 const std::vector<std::string>& dates) {
    std::vector<double> out;
    out.reserve(dates.size());
    for (const auto& d : dates) {
        const auto it = by_date.find(d);
        if (it == by_date.end())
            throw ValidationError("market series is missing date " + d);
        out.push_back(it->second);
    }
    return out;
}

}  // namespace edmnet
