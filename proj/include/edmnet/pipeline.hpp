#pragma once

#include <optional>

#include "edmnet/config.hpp"

namespace edmnet {

inline constexpr const char* kVersion = "0.1.0";

// Artifact file names inside the configured output directory.
namespace artifact {
inline constexpr const char* kReturns = "returns.csv";
inline constexpr const char* kEdmMatrix = "edm_matrix.csv";
inline constexpr const char* kEdges = "edges.csv";
inline constexpr const char* kStats = "stats.json";
inline constexpr const char* kCcdf = "ccdf.csv";
inline constexpr const char* kSweep = "sweep.csv";
inline constexpr const char* kCommunities = "communities.csv";
inline constexpr const char* kDendrogram = "dendrogram.csv";
inline constexpr const char* kMis = "mis.csv";
inline constexpr const char* kRisk = "risk.csv";
inline constexpr const char* kPortfolio = "portfolio.json";
inline constexpr const char* kBacktest = "backtest.csv";
inline constexpr const char* kManifest = "manifest.json";
}  // namespace artifact

// Each stage reads its upstream artifacts from cfg.output_dir (or the
// configured input paths) and writes exactly its own artifact, so stages
// compose through files with no hidden state.
void stage_returns(const PipelineConfig& cfg);    // prices -> returns.csv
void stage_edm(const PipelineConfig& cfg);        // returns.csv -> edm_matrix.csv
void stage_graph(const PipelineConfig& cfg);      // edm_matrix.csv -> edges.csv
void stage_stats(const PipelineConfig& cfg);      // edm_matrix.csv -> stats.json + ccdf.csv
void stage_sweep(const PipelineConfig& cfg);      // edm_matrix.csv -> sweep.csv
void stage_partition(const PipelineConfig& cfg);  // -> communities.csv (+ dendrogram.csv)
void stage_mis(const PipelineConfig& cfg);        // -> mis.csv

void stage_risk(const PipelineConfig& cfg);       // returns.csv -> risk.csv

// mis.csv + risk.csv + returns.csv -> portfolio.json. By default the LP
// runs over the union of all per-block sets; with `block` it runs over
// that block's set only.
void stage_optimize(const PipelineConfig& cfg, std::optional<int> block = std::nullopt);

void stage_backtest(const PipelineConfig& cfg);   // portfolio.json -> backtest.csv

// All stages in order, then manifest.json. Errors are re-thrown with the
// failing stage's name prefixed; artifacts written so far are kept.
void run_pipeline(const PipelineConfig& cfg);

}  // namespace edmnet
