#include "edmnet/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "edmnet/errors.hpp"

namespace edmnet {

ReturnAggregation parse_return_aggregation(const std::string& name) {
    if (name == "cumulative") return ReturnAggregation::cumulative;
    if (name == "mean_daily") return ReturnAggregation::mean_daily;
    throw ValidationError("unknown return aggregation '" + name +
                          "' (expected cumulative or mean_daily)");
}

std::string to_string(ReturnAggregation aggregation) {
    return aggregation == ReturnAggregation::cumulative ? "cumulative" : "mean_daily";
}

LpProblem build_lp(const std::vector<double>& risks, const std::vector<double>& rets,
                   double cap, double target) {
    if (risks.empty() || risks.size() != rets.size())
        throw std::invalid_argument("build_lp: risks and returns must be non-empty and equal-sized");
    if (!(cap > 0.0 && cap <= 1.0))
        throw std::invalid_argument("build_lp: cap must lie in (0, 1]");
    const auto n = risks.size();
    if (static_cast<double>(n) * cap < 1.0 - 1e-12) {
        std::ostringstream msg;
        msg << "infeasible allocation: " << n << " candidates with weight cap " << cap
            << " cannot reach a total weight of 1";
        throw InfeasibleError(msg.str());
    }

    LpProblem lp;
    lp.objective = risks;
    lp.eq_coeffs = {std::vector<double>(n, 1.0)};
    lp.eq_rhs = {1.0};
    lp.ge_coeffs = {rets};
    lp.ge_rhs = {target};
    lp.lower.assign(n, 0.0);
    lp.upper.assign(n, cap);
    return lp;
}

std::vector<double> expected_returns(const ReturnMatrix& returns,
                                     ReturnAggregation aggregation) {
    const std::size_t n = returns.n_tickers();
    std::vector<double> out(n, 0.0);
    for (const auto& row : returns.returns)
        for (std::size_t j = 0; j < n; ++j) out[j] += row[j];
    if (aggregation == ReturnAggregation::mean_daily && !returns.returns.empty())
        for (auto& v : out) v /= static_cast<double>(returns.returns.size());
    return out;
}

ReturnMatrix select_columns(const ReturnMatrix& returns,
                            const std::vector<std::string>& members) {
    if (members.empty()) throw ValidationError("select_columns: empty member list");
    std::vector<std::string> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("select_columns: duplicate ticker in member list");

    std::vector<std::size_t> cols;
    cols.reserve(sorted.size());
    for (const auto& t : sorted) cols.push_back(returns.ticker_index(t));

    ReturnMatrix sub;
    sub.tickers = std::move(sorted);
    sub.dates = returns.dates;
    sub.returns.reserve(returns.returns.size());
    for (const auto& row : returns.returns) {
        std::vector<double> picked;
        picked.reserve(cols.size());
        for (std::size_t c : cols) picked.push_back(row[c]);
        sub.returns.push_back(std::move(picked));
    }
    return sub;
}

namespace {

// Largest return reachable under the budget and cap: fill the cap on the
// highest-return assets, put the remainder on the next one.
double max_achievable_return(const std::vector<double>& rets, double cap) {
    std::vector<double> sorted = rets;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double budget = 1.0;
    double total = 0.0;
    for (double r : sorted) {
        const double take = std::min(cap, budget);
        total += take * r;
        budget -= take;
        if (budget <= 0.0) break;
    }
    return total;
}

}  // namespace

Portfolio optimize_with_inputs(std::vector<std::string> tickers,
                               const std::vector<double>& risks,
                               const std::vector<double>& rets, RiskMeasure measure,
                               double confidence, double cap, double target,
                               ReturnAggregation aggregation) {
    if (tickers.size() != risks.size())
        throw std::invalid_argument("optimize_with_inputs: ticker/risk count mismatch");
    const LpProblem lp = build_lp(risks, rets, cap, target);
    const LpSolution solution = solve_lp(lp);
    if (solution.status == LpStatus::infeasible) {
        std::ostringstream msg;
        msg << "target return " << target << " unattainable; maximum achievable is "
            << max_achievable_return(rets, cap);
        throw InfeasibleError(msg.str());
    }
    if (solution.status == LpStatus::unbounded)
        throw std::logic_error("optimize_with_inputs: bounded LP reported unbounded");

    Portfolio p;
    p.tickers = std::move(tickers);
    p.weights = solution.x;
    for (auto& w : p.weights) {
        if (std::abs(w) < 1e-12) w = 0.0;          // basic variable parked at 0
        else if (std::abs(w - cap) < 1e-12) w = cap;
    }
    p.objective = solution.objective;
    p.achieved_return =
        std::inner_product(rets.begin(), rets.end(), solution.x.begin(), 0.0);
    p.measure = measure;
    p.confidence = confidence;
    p.cap = cap;
    p.target_return = target;
    p.aggregation = aggregation;
    return p;
}

Portfolio optimize_portfolio(const ReturnMatrix& returns,
                             const std::vector<std::string>& members,
                             RiskMeasure measure, double confidence, double cap,
                             double target, ReturnAggregation aggregation) {
    const ReturnMatrix sub = select_columns(returns, members);
    const std::vector<double> risks = risk_vector(sub, measure, confidence);
    const std::vector<double> rets = expected_returns(sub, aggregation);
    return optimize_with_inputs(sub.tickers, risks, rets, measure, confidence, cap,
                                target, aggregation);
}

}  // namespace edmnet
