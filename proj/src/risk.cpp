#include "edmnet/risk.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "edmnet/errors.hpp"

namespace edmnet {

namespace {

void check_inputs(std::span<const double> returns, double confidence) {
    if (returns.empty()) throw ValidationError("risk: empty return series");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ValidationError("risk: confidence must lie in (0, 1)");
}

std::vector<double> losses_of(std::span<const double> returns) {
    std::vector<double> losses(returns.size());
    std::transform(returns.begin(), returns.end(), losses.begin(),
                   [](double r) { return -r; });
    return losses;
}

// 1-based order-statistic index k = ceil(c * n). The epsilon guards
// against c * n landing one ulp above an integer (e.g. 0.95 * 20).
std::size_t quantile_index(double confidence, std::size_t n) {
    auto k = static_cast<std::size_t>(
        std::ceil(confidence * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

}  // namespace

RiskMeasure parse_risk_measure(const std::string& name) {
    std::string folded(name.size(), '\0');
    std::transform(name.begin(), name.end(), folded.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (folded == "var") return RiskMeasure::var;
    if (folded == "es") return RiskMeasure::es;
    throw ValidationError("unknown risk measure '" + name + "' (expected var or es)");
}

std::string to_string(RiskMeasure measure) {
    return measure == RiskMeasure::var ? "var" : "es";
}

double value_at_risk(std::span<const double> returns, double confidence) {
    check_inputs(returns, confidence);
    auto losses = losses_of(returns);
    const std::size_t k = quantile_index(confidence, losses.size());
    std::nth_element(losses.begin(), losses.begin() + (k - 1), losses.end());
    return losses[k - 1];
}

double expected_shortfall(std::span<const double> returns, double confidence) {
    const double var = value_at_risk(returns, confidence);
    double sum = 0.0;
    std::size_t count = 0;
    for (const double r : returns) {
        const double loss = -r;
        if (loss > var) {
            sum += loss;
            ++count;
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : var;
}

double risk_of(std::span<const double> returns, RiskMeasure measure, double confidence) {
    return measure == RiskMeasure::var ? value_at_risk(returns, confidence)
                                       : expected_shortfall(returns, confidence);
}

std::vector<double> risk_vector(const ReturnMatrix& returns, RiskMeasure measure,
                                double confidence) {
    std::vector<double> out;
    out.reserve(returns.tickers.size());
    for (std::size_t j = 0; j < returns.tickers.size(); ++j) {
        const auto column = returns.column(j);
        out.push_back(risk_of(column, measure, confidence));
    }
    return out;
}

double portfolio_risk(const ReturnMatrix& returns, std::span<const double> weights,
                      RiskMeasure measure, double confidence) {
    if (weights.size() != returns.tickers.size())
        throw ValidationError("portfolio_risk: weight count does not match ticker count");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("portfolio_risk: weights must sum to 1");

    std::vector<double> series;
    series.reserve(returns.returns.size());
    for (const auto& row : returns.returns) {
        double value = 0.0;
        for (std::size_t j = 0; j < weights.size(); ++j) value += weights[j] * row[j];
        series.push_back(value);
    }
    return risk_of(series, measure, confidence);
}

}  // namespace edmnet
