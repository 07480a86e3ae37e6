#pragma once

#include <span>
#include <string>
#include <vector>

#include "edmnet/market_data.hpp"

namespace edmnet {

enum class RiskMeasure { var, es };

RiskMeasure parse_risk_measure(const std::string& name);  // "var" or "es"
std::string to_string(RiskMeasure measure);

// Historical value-at-risk of a return series at the given confidence
// level: the k-th smallest loss (loss = -return) with k = ceil(c * n),
// i.e. the empirical c-quantile of the loss distribution.
double value_at_risk(std::span<const double> returns, double confidence);

// Mean of the losses strictly exceeding VaR; falls back to VaR itself
// when no loss exceeds it.
double expected_shortfall(std::span<const double> returns, double confidence);

double risk_of(std::span<const double> returns, RiskMeasure measure, double confidence);

// Per-ticker risk over the columns of a return matrix.
std::vector<double> risk_vector(const ReturnMatrix& returns, RiskMeasure measure,
                                double confidence);

// Risk of the weighted portfolio return series. Weights must match the
// ticker count and sum to 1 within 1e-9.
double portfolio_risk(const ReturnMatrix& returns, std::span<const double> weights,
                      RiskMeasure measure, double confidence);

}  // namespace edmnet
