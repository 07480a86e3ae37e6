#pragma once

#include <string>
#include <vector>

#include "edmnet/market_data.hpp"
#include "edmnet/risk.hpp"
#include "edmnet/simplex.hpp"

namespace edmnet {

// Horizon used for the expected-return row R_i of the LP.
enum class ReturnAggregation { cumulative, mean_daily };

ReturnAggregation parse_return_aggregation(const std::string& name);
std::string to_string(ReturnAggregation aggregation);

struct Portfolio {
    std::vector<std::string> tickers;  // sorted ascending
    std::vector<double> weights;       // aligned with tickers, each in [0, cap]
    double objective = 0.0;            // sum of weight * risk
    double achieved_return = 0.0;      // sum of weight * expected return
    RiskMeasure measure = RiskMeasure::var;
    double confidence = 0.95;
    double cap = 0.3;
    double target_return = 0.0115;
    ReturnAggregation aggregation = ReturnAggregation::cumulative;
};

// min sum risks_i * c_i  s.t.  sum c_i = 1,  sum rets_i * c_i >= target,
// 0 <= c_i <= cap. Throws InfeasibleError when n * cap < 1 (budget row
// unreachable regardless of the data).
LpProblem build_lp(const std::vector<double>& risks, const std::vector<double>& rets,
                   double cap, double target);

// Restricts the return matrix to `members`, computes Risk_i with the
// chosen measure and R_i per `aggregation`, then solves the LP. Throws
// InfeasibleError (reporting the maximum achievable return) when the
// target return cannot be met.
Portfolio optimize_portfolio(const ReturnMatrix& returns,
                             const std::vector<std::string>& members,
                             RiskMeasure measure, double confidence, double cap,
                             double target,
                             ReturnAggregation aggregation = ReturnAggregation::cumulative);

// Same LP, but Risk_i and R_i supplied directly (tickers must be sorted;
// used when the inputs come from persisted artifacts).
Portfolio optimize_with_inputs(std::vector<std::string> tickers,
                               const std::vector<double>& risks,
                               const std::vector<double>& rets, RiskMeasure measure,
                               double confidence, double cap, double target,
                               ReturnAggregation aggregation);

// Expected-return row: cumulative or mean daily log-return per column.
std::vector<double> expected_returns(const ReturnMatrix& returns,
                                     ReturnAggregation aggregation);

// Column subset of a return matrix; members must be known and distinct.
ReturnMatrix select_columns(const ReturnMatrix& returns,
                            const std::vector<std::string>& members);

}  // namespace edmnet
