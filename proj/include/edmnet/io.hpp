#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edmnet/allocate.hpp"
#include "edmnet/backtest.hpp"
#include "edmnet/edm.hpp"
#include "edmnet/independent_set.hpp"
#include "edmnet/market_data.hpp"
#include "edmnet/network.hpp"
#include "edmnet/partition.hpp"
#include "edmnet/risk.hpp"

namespace edmnet::io {

// File plumbing; failures throw IoError naming the path.
std::ifstream open_input(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// returns.csv — `date,<ticker...>`; values round-trip exactly (%.17g).
void write_returns_csv(std::ostream& out, const ReturnMatrix& returns);
ReturnMatrix read_returns_csv(std::istream& in);

// edm_matrix.csv — ticker header row/column, full symmetric matrix,
// 6 decimal places. tail_fraction is not stored; reads yield 0 there.
void write_edm_csv(std::ostream& out, const EdmMatrix& matrix);
EdmMatrix read_edm_csv(std::istream& in);

// edges.csv — `ticker_a,ticker_b,edm_value` (6 decimals, matching the
// matrix file).
void write_edges_csv(std::ostream& out, const DependenceGraph& g, const EdmMatrix& matrix);

// stats.json — all network statistics plus a nullable power_law object.
std::string stats_json(const NetworkStats& stats, const std::optional<PowerLawFit>& fit,
                       double threshold);

// sweep.csv — one row per threshold:
// `threshold,isolated_vertices,average_degree,diameter,density,average_clustering,average_path_length`
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// ccdf.csv — `degree,ccdf`.
void write_ccdf_csv(std::ostream& out, const DegreeCcdf& ccdf);

// communities.csv — `ticker,block_id,method`.
void write_communities_csv(std::ostream& out, const DependenceGraph& g, const Partition& p);
Partition read_communities_csv(std::istream& in, const DependenceGraph& g);

// dendrogram.csv — `step,edge_a,edge_b,betweenness,components`.
void write_dendrogram_csv(std::ostream& out, const Dendrogram& d, const DependenceGraph& g);

// mis.csv — `block_id,ticker,exact_flag`.
void write_mis_csv(std::ostream& out, const std::vector<IndependentSet>& sets);
std::vector<IndependentSet> read_mis_csv(std::istream& in);

// risk.csv — `ticker,var,es,confidence` (both measures per ticker).
struct RiskTable {
    std::vector<std::string> tickers;
    std::vector<double> var;
    std::vector<double> es;
    double confidence = 0.95;

    double risk(const std::string& ticker, RiskMeasure measure) const;
};
void write_risk_csv(std::ostream& out, const RiskTable& table);
RiskTable read_risk_csv(std::istream& in);

// portfolio.json.
std::string portfolio_json(const Portfolio& p);
Portfolio read_portfolio_json(std::istream& in);

// backtest.csv — `window_start,window_end,series_name,return,risk,measure`.
void write_backtest_csv(std::ostream& out, const BacktestReport& report);

}  // namespace edmnet::io
